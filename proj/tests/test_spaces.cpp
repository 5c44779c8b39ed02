#include <doctest.h>

#include <cmath>

#include "sqckit/certify.hpp"
#include "sqckit/modulus.hpp"

using namespace sqckit;

TEST_CASE("closed-form modulus values") {
  SpaceSpec hilbert(2, 2.0);
  CHECK(modulus_exact(hilbert, 2.0) == 1.0);
  CHECK(modulus_exact(hilbert, 0.0) == 0.0);
  CHECK(modulus_exact(hilbert, 1.0) ==
        doctest::Approx(1.0 - std::sqrt(3.0) / 2.0).epsilon(1e-15));

  SpaceSpec p4(2, 4.0);
  CHECK(modulus_exact(p4, 0.0) == 0.0);
  CHECK(modulus_exact(p4, 1.0) ==
        doctest::Approx(1.0 - std::pow(1.0 - 1.0 / 16.0, 0.25)).epsilon(1e-15));

  SpaceSpec p15(2, 1.5);
  CHECK(modulus_exact(p15, 1.0) == 0.5 / 8.0);  // the (p-1) eps^2 / 8 lower bound

  CHECK_THROWS_AS((void)modulus_exact(hilbert, 2.5), Error);
  CHECK_THROWS_AS((void)modulus_exact(hilbert, -0.1), Error);
}

TEST_CASE("modulus bound check: the hilbert profile passes at sigma = 1") {
  ModulusProfile prof = modulus_exact_profile(SpaceSpec(4, 2.0), default_eps_grid());
  CHECK(prof.source == ModulusSource::ExactHilbert);
  CHECK(check_assumption_A(prof, 1.0).holds);
  CHECK(check_assumption_A(prof, 1e-30).holds);

  ModulusProfile hanner = modulus_exact_profile(SpaceSpec(2, 4.0), default_eps_grid());
  AssumptionAVerdict v = check_assumption_A(hanner, 0.01);
  CHECK(!v.holds);
  CHECK(v.eps <= 0.1);  // quartic decay fails the quadratic bound at small eps
  CHECK(v.delta < v.bound);
  CHECK(!check_assumption_A(hanner, 1.0).holds);
}

TEST_CASE("empirical modulus matches the closed forms from above") {
  SpaceSpec hilbert(2, 2.0);
  double exact = modulus_exact(hilbert, 1.0);
  double hat = modulus_empirical(hilbert, 1.0, 2000, 3);
  CHECK(hat >= exact - 1e-9);
  CHECK(hat <= exact + 1e-3);

  // antipodal pairs are forced at eps = 2; the feasibility boundary is
  // sqrt(ulp)-conditioned there, hence the looser tolerance
  CHECK(modulus_empirical(hilbert, 2.0, 500, 3) == doctest::Approx(1.0).epsilon(1e-6));

  // three dimensions, away from the constructed pairs
  SpaceSpec h3(3, 2.0);
  double hat3 = modulus_empirical(h3, 0.8, 4000, 9);
  double exact3 = modulus_exact(h3, 0.8);
  CHECK(hat3 >= exact3 - 1e-9);
  CHECK(hat3 <= exact3 + 1e-3);
}

TEST_CASE("empirical modulus reproduces the quartic scaling of the l4 ball") {
  SpaceSpec p4(2, 4.0);
  double d_02 = modulus_empirical(p4, 0.2, 4000, 5);
  double d_002 = modulus_empirical(p4, 0.02, 4000, 5);
  double ratio = d_02 / d_002;
  CHECK(ratio > 1e4 / 3.0);
  CHECK(ratio < 1e4 * 3.0);
  // ... and stays consistent with the Hanner values
  CHECK(d_02 >= modulus_exact(p4, 0.2) - 1e-12);
  CHECK(d_02 <= modulus_exact(p4, 0.2) * 1.5 + 1e-9);
}

TEST_CASE("norm parameter from the modulus bound") {
  ModulusProfile prof = modulus_exact_profile(SpaceSpec(2, 2.0), default_eps_grid());
  CHECK(norm_sqc_param(prof, 1.0, 1.0) == 0.5);
  CHECK(norm_sqc_param(prof, 1.0, 10.0) == 0.05);
  ModulusProfile hanner = modulus_exact_profile(SpaceSpec(2, 4.0), default_eps_grid());
  CHECK_THROWS_AS((void)norm_sqc_param(hanner, 1.0, 1.0), Error);
  try {
    (void)norm_sqc_param(hanner, 1.0, 1.0);
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::AssumptionAViolated);
  }
}

TEST_CASE("ball radius parameter 1/r, inner-product spaces only") {
  CHECK(inner_product_norm_param(SpaceSpec(3, 2.0), 1.0) == 1.0);
  CHECK(inner_product_norm_param(SpaceSpec(3, 2.0), 2.0) == 0.5);
  CHECK_THROWS_AS((void)inner_product_norm_param(SpaceSpec(3, 4.0), 1.0), Error);

  // 1-D oracle on |t| over [-1, 1] approaches 1/r = 1
  Abs1D vee;
  CHECK(oracle_sigma_1d(vee, -1.0, 1.0, 8193).sigma_hat == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("power-of-norm parameter") {
  CHECK(power_norm_param(1.0, 0.5, 4.0) == 0.25);
  CHECK(power_norm_param(1.0, 0.999, 1.0) == doctest::Approx(0.999).epsilon(1e-12));
  CHECK_THROWS_AS((void)power_norm_param(1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS((void)power_norm_param(1.0, 0.0, 1.0), Error);

  // sqrt(|t|) on [-1, 1] holds at the derived 0.5
  PowerNormAtom root(SpaceSpec(1, 2.0), 0.5);
  ConvexDomain dom = ConvexDomain::interval(-1.0, 1.0);
  CHECK(!falsify(root, dom, 0.5, 100000, 7).has_value());
}

TEST_CASE("gauge evaluation on the four body kinds") {
  GaugeBody ball = GaugeBody::pnorm_ball(SpaceSpec(2, 2.0), 2.0);
  CHECK(ball.gauge(Vec{0.0, 3.0}) == 1.5);
  CHECK(ball.gauge(Vec{0.0, 0.0}) == 0.0);

  GaugeBody box = GaugeBody::box({-1.0, -1.0}, {1.0, 1.0});
  CHECK(box.gauge(Vec{0.5, -0.25}) == 0.5);
  CHECK(box.gauge(Vec{0.0, 0.0}) == 0.0);

  GaugeBody poly = GaugeBody::polytope({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}},
                                       {1.0, 2.0, 1.0, 2.0});
  CHECK(poly.gauge(Vec{1.0, 0.0}) == 1.0);
  CHECK(poly.gauge(Vec{-1.0, 0.0}) == 0.5);
  CHECK(poly.gauge(Vec{0.0, 0.0}) == 0.0);

  GaugeBody ell = GaugeBody::ellipsoid(Matrix::diagonal({1.0, 4.0}));
  CHECK(ell.gauge(Vec{1.0, 0.0}) == 1.0);
  CHECK(ell.gauge(Vec{0.0, 1.0}) == 2.0);

  CHECK_THROWS_AS(GaugeBody::box({0.0, -1.0}, {1.0, 1.0}), Error);  // 0 not interior
  CHECK_THROWS_AS(GaugeBody::polytope({{1.0, 0.0}}, {-1.0}), Error);
}

TEST_CASE("gauges are positively homogeneous and subadditive on random samples") {
  std::vector<GaugeBody> bodies;
  bodies.push_back(GaugeBody::pnorm_ball(SpaceSpec(2, 3.0), 1.5));
  bodies.push_back(GaugeBody::box({-1.0, -2.0}, {0.5, 1.0}));
  bodies.push_back(GaugeBody::ellipsoid(Matrix(2, 2, {2.0, 0.5, 0.5, 1.0})));
  Rng rng(77);
  for (const auto& b : bodies) {
    for (int k = 0; k < 2000; ++k) {
      Vec x = {rng.uniform(-3, 3), rng.uniform(-3, 3)};
      Vec y = {rng.uniform(-3, 3), rng.uniform(-3, 3)};
      double t = rng.uniform(0.01, 5.0);
      double gx = b.gauge(x);
      CHECK(b.gauge(scaled(x, t)) == doctest::Approx(t * gx).epsilon(1e-12));
      CHECK(b.gauge(add(x, y)) <= gx + b.gauge(y) + 1e-12);
    }
  }
}

TEST_CASE("gauge modulus check: euclidean body passes, box body fails") {
  Vec grid = {0.05, 0.2, 0.5, 1.0, 1.5, 2.0};
  GaugeBody ball = GaugeBody::pnorm_ball(SpaceSpec(2, 2.0), 1.0);
  GaugeCheckResult ok = gauge_sqc_check(ball, SpaceSpec(2, 2.0), 0.5, grid, 800, 3);
  CHECK(ok.passed);
  REQUIRE(ok.certificate.has_value());
  CHECK(ok.certificate->sigma == 0.25);
  CHECK(ok.certificate->kind == CertKind::Estimated);

  GaugeBody box = GaugeBody::box({-1.0, -1.0}, {1.0, 1.0});
  GaugeCheckResult bad = gauge_sqc_check(box, SpaceSpec(2, 2.0), 0.5, grid, 800, 3);
  CHECK(!bad.passed);
  CHECK(bad.failing_eps <= 0.5);  // flat faces show up at small eps
  // on the round body only antipodal pairs remain at eps = 2, so
  // delta_hat hits 1 exactly; the box keeps distance-2 pairs along a
  // face and stays flat even there
  CHECK(gauge_modulus_empirical(ball, SpaceSpec(2, 2.0), 2.0, 400, 3) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(gauge_modulus_empirical(box, SpaceSpec(2, 2.0), 2.0, 400, 3) <= 1e-6);
}

TEST_CASE("no-violation outcomes imply the modulus bound empirically") {
  // necessity direction: sigma_1 = 1 on the euclidean unit ball is never
  // falsified, and the empirical modulus dominates sigma_1 eps^2 / 8
  NormAtom norm(SpaceSpec(2, 2.0));
  ConvexDomain ball = ConvexDomain::ball({0.0, 0.0}, 1.0, SpaceSpec(2, 2.0));
  CHECK(!falsify(norm, ball, 1.0, 20000, 1).has_value());
  for (double eps : {0.1, 0.5, 1.0, 1.7, 2.0}) {
    double hat = modulus_empirical(SpaceSpec(2, 2.0), eps, 1500, 1);
    CHECK(hat >= 1.0 * eps * eps / 8.0 - 1e-9);
  }
}

TEST_CASE("midpoint inequality and its lambda extension hold on samples") {
  SpaceSpec space(3, 2.0);
  Rng rng(123);
  auto sample_ball = [&]() {
    Vec v = rng.normal_vector(3);
    double n = space.norm(v);
    double r = std::pow(rng.uniform(), 1.0 / 3.0);
    return scaled(v, r / (n > 0 ? n : 1.0));
  };
  for (int k = 0; k < 10000; ++k) {
    Vec x = sample_ball(), y = sample_ball();
    double d = space.distance(x, y);
    double mid = space.norm(combine(x, y, 0.5));
    double mx = std::max(space.norm(x), space.norm(y));
    CHECK(mid <= mx - (1.0 / 8.0) * d * d + 1e-12);

    double lam = rng.uniform(0.001, 0.999);
    double pt = space.norm(combine(x, y, lam));
    CHECK(pt <= mx - 0.25 * lam * (1.0 - lam) * d * d + 1e-12);
  }
}
