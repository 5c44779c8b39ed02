#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sqckit/domain.hpp"
#include "sqckit/expr.hpp"

namespace sqckit {

struct MinimizeOptions {
  std::size_t starts = 16;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct MinCluster {
  Vec point;
  double value = 0.0;
  std::size_t members = 0;
};

struct MinimizeResult {
  Vec argmin;
  ExtReal value = 0.0;
  std::size_t starts_converged = 0;
  std::vector<MinCluster> distinct_local_minima;  // best first
  double sublevel_bound = 0.0;  // radius the search was confined to
  /// True when probing toward a landmark/boundary point found values that
  /// keep strictly decreasing through 3 refinement scales toward a limit
  /// below both the best found value and the value at the limit point: the
  /// computational stand-in for an unattained infimum.
  bool attainment_suspect = false;
  Vec suspect_limit_point;
};

/// Multi-start compass (pattern) search over the compact domain. Starts are
/// the expression landmarks, the domain extremes, and seeded samples; every
/// iteration also probes landmarks within the current step so exact override
/// points attract the search. Derivative-free: the corpus functions are
/// discontinuous at overrides, so no gradient exists to follow.
MinimizeResult minimize(const Expr& f, const ConvexDomain& domain,
                        const MinimizeOptions& opts = {});

/// Same search for a raw objective (used by prox, which minimizes
/// f + 0.5 ||. - v||^2).
MinimizeResult minimize_objective(const std::function<double(std::span<const double>)>& objective,
                                  const ConvexDomain& domain, const std::vector<Vec>& landmarks,
                                  const MinimizeOptions& opts = {});

struct GrowthViolation {
  Vec y;
  double f_y = 0.0;
  double bound = 0.0;
};

struct GrowthReport {
  double sigma = 0.0;
  Vec xbar;
  double f_xbar = 0.0;
  std::size_t samples = 0;
  std::vector<GrowthViolation> violations;         // against f(xbar) + (sigma/4) d^2
  std::vector<GrowthViolation> violations_eighth;  // against the weaker sigma/8 bound
  bool passed() const { return violations.empty(); }
};

/// Samples y in the domain and checks f(y) >= f(xbar) + (sigma/4) ||y-xbar||^2
/// (and the sigma/8 sanity variant) within a relative tolerance.
GrowthReport quadratic_growth_check(const Expr& f, const Vec& xbar, double sigma,
                                    const ConvexDomain& domain, std::size_t samples,
                                    std::uint64_t seed);

struct CoercivityProfile {
  int order = 2;
  Vec radii;
  Vec inf_ratios;                 // per-radius inf of f(x) / ||x||^order
  std::vector<Vec> arg_points;    // where each infimum was attained
  enum class Verdict { PositiveLiminf, Inconclusive, Negative } verdict = Verdict::Inconclusive;
  std::vector<GrowthViolation> growth_violations;  // sigma/8 check on the outer shell
};

/// Shell infima of f(x)/||x||^order on spheres ||x|| = R. The constraint set,
/// when given, plays the role of K (f is +inf outside it); a shell entirely
/// outside the constraint is an error. With a certified sigma, additionally
/// checks f(y) >= f(x0) + (sigma/8) ||y - x0||^2 on the outermost shell.
CoercivityProfile supercoercivity_profile(const Expr& f, const Vec& x0, int order,
                                          const Vec& radii, std::size_t samples_per_radius,
                                          std::uint64_t seed, const SpaceSpec& space,
                                          const std::optional<ConvexDomain>& constraint = {},
                                          std::optional<double> sigma = {});

struct ProxResult {
  std::vector<Vec> points;  // attaining cluster representatives, best first
  double value = 0.0;       // objective value at the prox points
  bool attainment_suspect = false;
  MinimizeResult search;  // full diagnostics
  bool empty() const { return points.empty(); }
};

/// prox_f(v): minimizes f(x) + 0.5 ||x - v||^2 over the search domain
/// (default: the ball around v of radius max(8, 8 (1 + |f(v)|)), valid under
/// 2-supercoercivity). Returns the attaining set, which is empty with the
/// attainment-suspect flag when the infimum trend is never met.
ProxResult prox(const Expr& f, const Vec& v, std::optional<ConvexDomain> search_domain,
                double tol, std::uint64_t seed);

}  // namespace sqckit
