#pragma once

#include <string>

#include "sqckit/expr.hpp"

namespace sqckit {

/// Canonical JSON text: node objects {"kind": ..., fields...} with children
/// under "child"/"children", fields in alphabetical order, shortest
/// round-trip number formatting. deserialize(serialize(e)) evaluates
/// identically to e everywhere.
std::string serialize(const Expr& expr, int indent = -1);

ExprPtr deserialize(const std::string& text);

ExprPtr load_expression_file(const std::string& path);

}  // namespace sqckit
