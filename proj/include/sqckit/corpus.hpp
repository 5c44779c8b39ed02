#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqckit/certify.hpp"
#include "sqckit/domain.hpp"
#include "sqckit/expr.hpp"

namespace sqckit {

/// One corpus entry: an expression, its search domain, the declared
/// lower-semicontinuity flag, and the expected verdicts the pipeline must
/// reproduce (with any discrepancy notes carried verbatim into reports).
struct Fixture {
  std::string id;
  std::string title;
  ExprPtr expr;
  ConvexDomain domain;
  bool lsc = true;
  nlohmann::json expected;  // structured expected block (see corpus files)
  std::vector<std::string> notes;

  std::optional<Triple> witness_hint() const;
};

Fixture load_fixture(const std::string& path);
std::vector<Fixture> load_corpus_dir(const std::string& dir, const std::string& filter = "");

struct CorpusOptions {
  std::string filter;
  std::size_t budget = 100000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct AssertionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct FixtureReport {
  std::string id;
  std::vector<AssertionResult> assertions;
  std::vector<std::string> notes;
  bool all_passed() const;
};

struct CorpusReport {
  std::vector<FixtureReport> fixtures;
  std::size_t total = 0;
  std::size_t passed = 0;
  bool green() const { return total == passed; }

  nlohmann::json to_json() const;
  std::string table() const;  // human-readable, excluded from golden outputs
};

/// Runs every expected assertion of every fixture: estimates, oracle values,
/// falsifier cases, minimization, prox. Deterministic for fixed seed and any
/// thread count.
CorpusReport corpus_run(const std::vector<Fixture>& fixtures, const CorpusOptions& opts);

}  // namespace sqckit
