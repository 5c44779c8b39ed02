#include <doctest.h>

#include "sqckit/corpus.hpp"
#include "sqckit/expr_json.hpp"

using namespace sqckit;

#ifndef SQCKIT_CORPUS_DIR
#define SQCKIT_CORPUS_DIR "corpus"
#endif

TEST_CASE("every fixture parses and its expression evaluates") {
  std::vector<Fixture> fixtures = load_corpus_dir(SQCKIT_CORPUS_DIR);
  CHECK(fixtures.size() >= 10);
  for (const auto& f : fixtures) {
    CHECK(!f.id.empty());
    CHECK(f.expr->input_dim() == f.domain.dim());
    Vec c = f.domain.center();
    (void)f.expr->eval(c);  // must not throw
  }
}

TEST_CASE("the shift-sum fixture file evaluates to the closed form") {
  Fixture f = load_fixture(std::string(SQCKIT_CORPUS_DIR) + "/ex_6_3_shift_sum.json");
  CHECK(f.expr->eval1(-1.0).value() == 3.0);
  CHECK(f.expr->eval1(1.0).value() == 3.0);
  CHECK(f.expr->eval1(0.0).value() == 2.0);
  CHECK(f.expr->eval1(2.0).value() == 10.0);
  CHECK(f.expr->eval1(std::sqrt(3.0) / 2.0).value() == 3.5);
  CHECK(!f.witness_hint() ? false : true);
}

TEST_CASE("corpus suite is green at a reduced budget") {
  std::vector<Fixture> fixtures = load_corpus_dir(SQCKIT_CORPUS_DIR);
  CorpusOptions opts;
  opts.budget = 20000;
  opts.seed = 1;
  CorpusReport rep = corpus_run(fixtures, opts);
  INFO(rep.table());
  CHECK(rep.green());
  CHECK(rep.total >= 30);
}

TEST_CASE("fixture filtering and the report shape") {
  std::vector<Fixture> fixtures = load_corpus_dir(SQCKIT_CORPUS_DIR, "ex_6_2");
  REQUIRE(fixtures.size() == 1);
  CorpusOptions opts;
  opts.budget = 5000;
  opts.seed = 7;
  CorpusReport rep = corpus_run(fixtures, opts);
  CHECK(rep.fixtures.size() == 1);
  CHECK(rep.fixtures[0].id == "ex_6_2_linear");
  auto j = rep.to_json();
  CHECK(j["summary"]["total"].get<std::size_t>() == rep.total);
  CHECK(j["fixtures"].size() == 1);
}

TEST_CASE("missing fixture files fail with FixtureParseError") {
  CHECK_THROWS_AS((void)load_fixture("/nonexistent/nope.json"), Error);
  try {
    (void)load_fixture("/nonexistent/nope.json");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::FixtureParseError);
  }
}
