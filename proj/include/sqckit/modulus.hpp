#pragma once

#include <optional>
#include <string>

#include "sqckit/certificate.hpp"
#include "sqckit/gauge.hpp"
#include "sqckit/space.hpp"

namespace sqckit {

enum class ModulusSource { ExactHilbert, ExactHanner, LowerBoundP, Flat, Empirical };

const char* modulus_source_name(ModulusSource s);

/// Modulus-of-convexity values delta(eps) on an increasing eps grid in (0, 2].
struct ModulusProfile {
  Vec eps_grid;
  Vec delta_values;
  ModulusSource source = ModulusSource::Empirical;
  std::string space_label;
};

/// 64 logarithmically spaced points in [1e-3, 2]; the small-eps end is where
/// the p > 2 failures concentrate.
Vec default_eps_grid();

/// Closed-form modulus: p = 2 the Hilbert formula 1 - sqrt(1 - eps^2/4);
/// p > 2 the Hanner formula 1 - (1 - (eps/2)^p)^(1/p); 1 < p < 2 only the
/// lower bound (p-1) eps^2 / 8 (flagged as bound-not-value by the profile
/// source); p = inf is identically zero.
double modulus_exact(const SpaceSpec& space, double eps);

ModulusProfile modulus_exact_profile(const SpaceSpec& space, const Vec& eps_grid);

struct AssumptionAVerdict {
  bool holds = false;
  // first failing grid point when !holds
  double eps = 0.0;
  double delta = 0.0;
  double bound = 0.0;
};

/// delta(eps) >= sigma eps^2 / 8 at every grid point, within tol.
AssumptionAVerdict check_assumption_A(const ModulusProfile& profile, double sigma,
                                      double tol = 1e-12);

/// Upper estimate of delta(eps): minimizes 1 - ||(x+y)/2|| over sampled and
/// constructed admissible pairs (||x||, ||y|| <= 1, ||x - y|| >= eps) with
/// deterministic local refinement. An infimum approximated from above.
double modulus_empirical(const SpaceSpec& space, double eps, std::size_t budget,
                         std::uint64_t seed);

/// Gauge analogue: pairs with gauge(x), gauge(y) <= 1 and norm distance
/// ||x - y|| >= eps in the ambient space; objective 1 - gauge((x+y)/2).
double gauge_modulus_empirical(const GaugeBody& body, const SpaceSpec& ambient, double eps,
                               std::size_t budget, std::uint64_t seed);

/// sigma_A/(2M) on an M-bounded set, after verifying the modulus bound
/// delta >= sigma_A eps^2/8 on the profile grid. Throws AssumptionAViolated.
double norm_sqc_param(const ModulusProfile& profile, double sigma_a, double bound_m);

/// 1/r on a ball of radius r in an inner-product space.
double inner_product_norm_param(const SpaceSpec& space, double radius);

/// a R^(a-1) sigma for the norm raised to a in (0,1) on a ball of radius R.
double power_norm_param(double sigma, double a, double radius);

struct GaugeCheckResult {
  bool passed = false;
  double failing_eps = 0.0;
  Vec eps_grid;
  Vec delta_hat;
  std::optional<SigmaCertificate> certificate;  // sigma/2, estimated, on the closed body
};

/// Empirical gauge-modulus check delta_hat(eps) >= sigma eps^2 / 4 on the
/// grid; emits a sigma/2 certificate for the gauge on the closed body when
/// the grid passes.
GaugeCheckResult gauge_sqc_check(const GaugeBody& body, const SpaceSpec& ambient, double sigma,
                                 const Vec& eps_grid, std::size_t budget, std::uint64_t seed);

}  // namespace sqckit
