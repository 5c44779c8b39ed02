#include <doctest.h>

#include <cmath>

#include "sqckit/expr_json.hpp"
#include "sqckit/optimize.hpp"

using namespace sqckit;

namespace {

ExprPtr quad_dip() { return std::make_shared<QuadDip>(); }

ExprPtr half_parabola() {
  return deserialize(R"({
    "kind":"piecewise1d","breakpoints":[],
    "pieces":[{"kind":"poly1d","coefficients":[0,0,1]}],
    "overrides":[{"at":0.0,"value":1.0}]})");
}

}  // namespace

TEST_CASE("minimize finds the dip exactly") {
  MinimizeResult r = minimize(*quad_dip(), ConvexDomain::interval(-5.0, 5.0));
  CHECK(r.argmin == Vec{0.0});
  CHECK(r.value.value() == -1.0);
  CHECK(r.distinct_local_minima.size() == 1);
  CHECK(!r.attainment_suspect);
}

TEST_CASE("minimize finds the center of the norm ball") {
  NormAtom norm(SpaceSpec(2, 2.0));
  MinimizeResult r =
      minimize(norm, ConvexDomain::ball({0.0, 0.0}, 1.0, SpaceSpec(2, 2.0)));
  CHECK(norm.space.norm(r.argmin) <= 1e-7);
  CHECK(r.value.value() <= 1e-7);
  CHECK(r.distinct_local_minima.size() == 1);
}

TEST_CASE("uniqueness holds for certified fixtures across seeds") {
  MinimizeOptions mo;
  mo.starts = 64;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    mo.seed = seed;
    MinimizeResult r = minimize(*quad_dip(), ConvexDomain::interval(-5.0, 5.0), mo);
    CHECK(r.distinct_local_minima.size() == 1);
    CHECK(r.argmin == Vec{0.0});
  }
}

TEST_CASE("the unattained infimum is flagged, not reported as a minimum") {
  MinimizeResult r = minimize(*half_parabola(), ConvexDomain::interval(0.0, 10.0));
  CHECK(r.attainment_suspect);
  CHECK(r.suspect_limit_point == Vec{0.0});
  // the best cluster hovers just above the unattained infimum 0
  CHECK(r.value.value() > 0.0);
  CHECK(r.value.value() < 1e-6);
}

TEST_CASE("quadratic growth holds at the certified sigma and fails inflated") {
  ConvexDomain dom = ConvexDomain::interval(-5.0, 5.0);
  GrowthReport ok = quadratic_growth_check(*quad_dip(), {0.0}, 2.0, dom, 10000, 1);
  CHECK(ok.passed());
  CHECK(ok.violations_eighth.empty());
  CHECK(ok.samples >= 10000);

  NormAtom norm(SpaceSpec(2, 2.0));
  ConvexDomain ball = ConvexDomain::ball({0.0, 0.0}, 1.0, SpaceSpec(2, 2.0));
  GrowthReport nrm = quadratic_growth_check(norm, {0.0, 0.0}, 0.5, ball, 10000, 1);
  CHECK(nrm.passed());

  GrowthReport bad = quadratic_growth_check(*quad_dip(), {0.0}, 10.0, dom, 10000, 1);
  CHECK(!bad.passed());
  // a concrete violator: y = 1 has f = 1 below the bound -1 + 2.5
  bool found_near_one = false;
  for (const auto& v : bad.violations)
    if (std::abs(std::abs(v.y[0]) - 1.0) < 0.5) found_near_one = true;
  CHECK(found_near_one);
}

TEST_CASE("supercoercivity shells: dip positive, identity negative, norm flat") {
  SpaceSpec line(1, 2.0);
  CoercivityProfile dip =
      supercoercivity_profile(*quad_dip(), {0.0}, 2, {10.0, 50.0, 100.0}, 64, 1, line);
  CHECK(dip.verdict == CoercivityProfile::Verdict::PositiveLiminf);
  for (double r : dip.inf_ratios) CHECK(r == doctest::Approx(1.0));

  Linear1D ident(1.0, 0.0);
  CoercivityProfile lin =
      supercoercivity_profile(ident, {0.0}, 1, {10.0, 50.0, 100.0}, 64, 1, line);
  CHECK(lin.verdict == CoercivityProfile::Verdict::Negative);

  NormAtom norm(SpaceSpec(2, 2.0));
  CoercivityProfile flat = supercoercivity_profile(norm, {0.0, 0.0}, 2, {10.0, 50.0, 100.0}, 64,
                                                   1, SpaceSpec(2, 2.0));
  CHECK(flat.verdict != CoercivityProfile::Verdict::PositiveLiminf);
  CHECK(flat.inf_ratios[0] == doctest::Approx(0.1));
  CHECK(flat.inf_ratios[2] == doctest::Approx(0.01));

  // certified sigma adds the growth sanity check on the outer shell
  CoercivityProfile with_growth = supercoercivity_profile(
      *quad_dip(), {0.0}, 2, {10.0, 50.0, 100.0}, 64, 1, line, std::nullopt, 2.0);
  CHECK(with_growth.growth_violations.empty());
}

TEST_CASE("shells outside the constraint set are an error") {
  SpaceSpec line(1, 2.0);
  CHECK_THROWS_AS((void)supercoercivity_profile(*quad_dip(), {0.0}, 2, {20.0, 50.0, 100.0}, 16,
                                                1, line, ConvexDomain::interval(0.0, 10.0)),
                  Error);
}

TEST_CASE("prox of the dip function") {
  ProxResult at3 = prox(*quad_dip(), {3.0}, std::nullopt, 1e-8, 1);
  REQUIRE(at3.points.size() == 1);
  CHECK(at3.points[0][0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(at3.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(!at3.attainment_suspect);

  ProxResult at0 = prox(*quad_dip(), {0.0}, std::nullopt, 1e-8, 1);
  REQUIRE(at0.points.size() == 1);
  CHECK(at0.points[0][0] == 0.0);
  CHECK(at0.value == -1.0);
}

TEST_CASE("prox of the non-lsc fixture at the origin is empty and flagged") {
  ProxResult r =
      prox(*half_parabola(), {0.0}, ConvexDomain::interval(0.0, 10.0), 1e-8, 1);
  CHECK(r.empty());
  CHECK(r.attainment_suspect);
  CHECK(r.search.suspect_limit_point == Vec{0.0});
}

TEST_CASE("prox without a finite default center needs an explicit domain") {
  Table1D t({0.0, 1.0}, {0.0, 1.0});  // +inf outside [0,1]
  CHECK_THROWS_AS((void)prox(t, {5.0}, std::nullopt, 1e-8, 1), Error);
  ProxResult ok = prox(t, {5.0}, ConvexDomain::interval(0.0, 1.0), 1e-8, 1);
  CHECK(!ok.empty());
  CHECK(ok.points[0][0] == doctest::Approx(1.0).epsilon(1e-6));
}
