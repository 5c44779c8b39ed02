#pragma once

#include <string>

#include "sqckit/domain.hpp"

namespace sqckit {

/// Domain spec strings:
///   ball:<center-csv>:<r>    box:<lo-csv>:<hi-csv>
///   interval:<lo>:<hi>       segment:<a-csv>:<b-csv>
/// with an optional @p=<p> suffix selecting the norm exponent (default 2,
/// "inf" allowed).
ConvexDomain parse_domain(const std::string& spec);

/// Inverse of parse_domain for report echoes.
std::string domain_to_string(const ConvexDomain& d);

}  // namespace sqckit
