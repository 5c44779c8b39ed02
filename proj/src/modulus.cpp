#include "sqckit/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace sqckit {

const char* modulus_source_name(ModulusSource s) {
  switch (s) {
    case ModulusSource::ExactHilbert:
      return "exact-hilbert";
    case ModulusSource::ExactHanner:
      return "exact-hanner";
    case ModulusSource::LowerBoundP:
      return "lower-bound-p";
    case ModulusSource::Flat:
      return "flat";
    case ModulusSource::Empirical:
      return "empirical";
  }
  return "?";
}

Vec default_eps_grid() {
  Vec grid(64);
  double lo = std::log(1e-3), hi = std::log(2.0);
  for (int i = 0; i < 64; ++i) grid[i] = std::exp(lo + (hi - lo) * i / 63.0);
  grid[63] = 2.0;
  return grid;
}

double modulus_exact(const SpaceSpec& space, double eps) {
  if (!(eps >= 0.0) || eps > 2.0) fail(ErrorCode::EpsOutOfRange, "eps must lie in [0, 2]");
  double p = space.p();
  if (space.is_max_norm()) return 0.0;
  if (p == 2.0) return 1.0 - std::sqrt(std::max(0.0, 1.0 - eps * eps / 4.0));
  if (p > 2.0) return 1.0 - std::pow(1.0 - std::pow(eps / 2.0, p), 1.0 / p);
  return (p - 1.0) / 8.0 * eps * eps;  // lower bound, not the exact value
}

ModulusProfile modulus_exact_profile(const SpaceSpec& space, const Vec& eps_grid) {
  ModulusProfile prof;
  prof.eps_grid = eps_grid;
  prof.delta_values.reserve(eps_grid.size());
  for (double e : eps_grid) prof.delta_values.push_back(modulus_exact(space, e));
  double p = space.p();
  prof.source = space.is_max_norm() ? ModulusSource::Flat
                : p == 2.0          ? ModulusSource::ExactHilbert
                : p > 2.0           ? ModulusSource::ExactHanner
                                    : ModulusSource::LowerBoundP;
  prof.space_label = "lp(p=" + std::to_string(p) + ",n=" + std::to_string(space.dim()) + ")";
  return prof;
}

AssumptionAVerdict check_assumption_A(const ModulusProfile& profile, double sigma, double tol) {
  if (profile.eps_grid.empty() || profile.eps_grid.size() != profile.delta_values.size())
    fail(ErrorCode::InvalidConstant, "empty or inconsistent modulus profile");
  for (std::size_t i = 0; i < profile.eps_grid.size(); ++i) {
    double eps = profile.eps_grid[i];
    double bound = sigma * eps * eps / 8.0;
    if (profile.delta_values[i] < bound - tol)
      return {false, eps, profile.delta_values[i], bound};
  }
  return {true, 0.0, 0.0, 0.0};
}

namespace {

struct PairCandidate {
  Vec x, y;
  double objective = std::numeric_limits<double>::infinity();
};

// Shared estimator core: minimize 1 - unit(midpoint) over pairs with
// unit(x) <= 1, unit(y) <= 1 and dist(x, y) >= eps. `unit` is the norm or the
// gauge; `dist` is always the ambient norm distance (the gauge modulus mixes
// the two on purpose).
class PairEstimator {
 public:
  PairEstimator(std::function<double(std::span<const double>)> unit,
                std::function<Vec(const Vec&)> to_surface, std::size_t dim, double eps)
      : unit_(std::move(unit)), to_surface_(std::move(to_surface)), dim_(dim), eps_(eps) {}

  double objective(const Vec& x, const Vec& y) const {
    Vec mid = combine(x, y, 0.5);
    return 1.0 - unit_(mid);
  }

  Vec to_surface(const Vec& d) const { return to_surface_(d); }

  // The distance constraint is strict: every candidate must be genuinely
  // feasible, or the sampled infimum stops being an upper bound.
  bool admissible(const Vec& x, const Vec& y, const SpaceSpec& ambient) const {
    return unit_(x) <= 1.0 + 1e-12 && unit_(y) <= 1.0 + 1e-12 &&
           ambient.distance(x, y) >= eps_;
  }

  // Surface pair straddling the center direction: x = surface(c + t w),
  // y = surface(c - t w), with t bisected so the ambient distance between
  // them is (just above) eps. Both endpoints move; with c on the flattest
  // spot of the body this lands on the extremal pair.
  std::optional<PairCandidate> bisect_straddle(const Vec& center, const Vec& wing,
                                               const SpaceSpec& ambient) const {
    auto pair_at = [&](double tau) -> std::optional<std::pair<Vec, Vec>> {
      double t = tau / (1.0 - tau + 1e-15);
      Vec d1(dim_), d2(dim_);
      double n1 = 0.0, n2 = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        d1[i] = center[i] + t * wing[i];
        d2[i] = center[i] - t * wing[i];
        n1 += std::abs(d1[i]);
        n2 += std::abs(d2[i]);
      }
      if (n1 <= 1e-300 || n2 <= 1e-300) return std::nullopt;
      return std::pair<Vec, Vec>{to_surface_(d1), to_surface_(d2)};
    };
    auto dist_at = [&](double tau) {
      auto p = pair_at(tau);
      if (!p) return 0.0;
      return ambient.distance(p->first, p->second);
    };
    double hi = 1.0 - 1e-12;
    if (dist_at(hi) < eps_) return std::nullopt;
    double lo = 0.0;
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      if (dist_at(mid) >= eps_)
        hi = mid;
      else
        lo = mid;
    }
    auto p = pair_at(hi);
    if (!p) return std::nullopt;
    PairCandidate c;
    c.x = std::move(p->first);
    c.y = std::move(p->second);
    if (!admissible(c.x, c.y, ambient)) return std::nullopt;
    c.objective = objective(c.x, c.y);
    return c;
  }

  // Deterministic coordinate descent on both endpoints with projection back
  // into the admissible set.
  void refine(PairCandidate& best, const SpaceSpec& ambient, int steps = 100) const {
    double step = 0.25;
    for (int it = 0; it < steps; ++it) {
      bool improved = false;
      for (int side = 0; side < 2; ++side) {
        Vec& pt = side == 0 ? best.x : best.y;
        for (std::size_t i = 0; i < dim_; ++i) {
          for (double dir : {+1.0, -1.0}) {
            Vec trial = pt;
            trial[i] += dir * step;
            double g = unit_(trial);
            if (g > 1.0) trial = scaled(trial, 1.0 / g);  // project to surface
            const Vec& other = side == 0 ? best.y : best.x;
            if (ambient.distance(trial, other) < eps_) continue;
            double obj = side == 0 ? objective(trial, best.y) : objective(best.x, trial);
            if (obj < best.objective) {
              best.objective = obj;
              pt = trial;
              improved = true;
            }
          }
        }
      }
      if (!improved) step *= 0.5;
      if (step < 1e-14) break;
    }
  }

 private:
  std::function<double(std::span<const double>)> unit_;
  std::function<Vec(const Vec&)> to_surface_;
  std::size_t dim_;
  double eps_;
};

double empirical_modulus_core(const PairEstimator& est, const SpaceSpec& ambient,
                              std::size_t dim, double eps, std::size_t budget,
                              std::uint64_t seed) {
  if (!(eps > 0.0) || eps > 2.0) fail(ErrorCode::EpsOutOfRange, "eps must lie in (0, 2]");
  if (budget < 1) fail(ErrorCode::InvalidConstant, "estimator budget must be >= 1");

  std::optional<PairCandidate> best;
  auto consider = [&](std::optional<PairCandidate> c) {
    if (!c) return;
    if (!best || c->objective < best->objective) best = std::move(c);
  };

  // Exact antipodal pairs: the midpoint is exactly zero, which is the only
  // admissible configuration left at eps = 2 on strictly convex bodies.
  Rng rng(seed);
  std::size_t spent = 0;
  auto consider_antipodal = [&](const Vec& d) {
    double l1 = 0.0;
    for (double v : d) l1 += std::abs(v);
    if (l1 <= 1e-300) return;
    PairCandidate c;
    c.x = est.to_surface(d);
    c.y = scaled(c.x, -1.0);
    if (!est.admissible(c.x, c.y, ambient)) return;
    c.objective = est.objective(c.x, c.y);
    consider(std::optional<PairCandidate>(std::move(c)));
  };
  for (std::size_t i = 0; i < dim && spent < budget; ++i, ++spent) {
    Vec e(dim, 0.0);
    e[i] = 1.0;
    consider_antipodal(e);
    e[i] = -1.0;
    consider_antipodal(e);
  }
  for (int k = 0; k < 8 && spent < budget; ++k, ++spent)
    consider_antipodal(rng.normal_vector(dim));

  // Axis-centered and diagonal-centered straddles cover the flattest spots
  // of every lp ball (axes for p > 2, diagonals for p < 2); the seeded
  // random straddles cover everything else, including gauge bodies.
  for (std::size_t i = 0; i < dim && spent < budget; ++i) {
    for (std::size_t j = 0; j < dim && spent < budget; ++j) {
      if (i == j) continue;
      Vec c(dim, 0.0), w(dim, 0.0);
      c[i] = 1.0;
      w[j] = 1.0;
      consider(est.bisect_straddle(c, w, ambient));
      ++spent;
      Vec cd(dim, 0.0);
      cd[i] = 1.0;
      cd[j] = 1.0;
      Vec wd(dim, 0.0);
      wd[i] = 1.0;
      wd[j] = -1.0;
      consider(est.bisect_straddle(cd, wd, ambient));
      ++spent;
    }
  }
  while (spent < budget) {
    ++spent;
    Vec c = rng.normal_vector(dim);
    Vec w = rng.normal_vector(dim);
    consider(est.bisect_straddle(c, w, ambient));
  }
  if (!best) fail(ErrorCode::NoAdmissiblePairFound, "no admissible pair within the budget");

  est.refine(*best, ambient);
  return std::max(0.0, best->objective);
}

}  // namespace

double modulus_empirical(const SpaceSpec& space, double eps, std::size_t budget,
                         std::uint64_t seed) {
  PairEstimator est([&](std::span<const double> v) { return space.norm(v); },
                    [&](const Vec& d) { return space.normalized(d); }, space.dim(), eps);
  return empirical_modulus_core(est, space, space.dim(), eps, budget, seed);
}

double gauge_modulus_empirical(const GaugeBody& body, const SpaceSpec& ambient, double eps,
                               std::size_t budget, std::uint64_t seed) {
  if (ambient.dim() != body.dim())
    fail(ErrorCode::DimensionMismatch, "ambient space and body dimensions differ");
  PairEstimator est([&](std::span<const double> v) { return body.gauge(v); },
                    [&](const Vec& d) { return body.boundary_point(d); }, body.dim(), eps);
  return empirical_modulus_core(est, ambient, body.dim(), eps, budget, seed);
}

double norm_sqc_param(const ModulusProfile& profile, double sigma_a, double bound_m) {
  if (!(sigma_a > 0.0)) fail(ErrorCode::InvalidConstant, "sigma_A must be positive");
  if (!(bound_m > 0.0)) fail(ErrorCode::InvalidConstant, "the bound M must be positive");
  AssumptionAVerdict v = check_assumption_A(profile, sigma_a);
  if (!v.holds)
    fail(ErrorCode::AssumptionAViolated,
         "modulus bound fails at eps = " + std::to_string(v.eps));
  return sigma_a / (2.0 * bound_m);
}

double inner_product_norm_param(const SpaceSpec& space, double radius) {
  if (!space.is_inner_product())
    fail(ErrorCode::NotInnerProduct, "1/r parameter needs an inner-product norm (p = 2)");
  if (!(radius > 0.0)) fail(ErrorCode::NonpositiveRadius, "radius must be positive");
  return 1.0 / radius;
}

double power_norm_param(double sigma, double a, double radius) {
  if (!(a > 0.0) || !(a < 1.0))
    fail(ErrorCode::ExponentOutOfRange, "power exponent must lie in (0, 1)");
  if (!(sigma > 0.0)) fail(ErrorCode::InvalidConstant, "sigma must be positive");
  if (!(radius > 0.0)) fail(ErrorCode::NonpositiveRadius, "radius must be positive");
  return a * std::pow(radius, a - 1.0) * sigma;
}

GaugeCheckResult gauge_sqc_check(const GaugeBody& body, const SpaceSpec& ambient, double sigma,
                                 const Vec& eps_grid, std::size_t budget, std::uint64_t seed) {
  if (!(sigma > 0.0)) fail(ErrorCode::InvalidConstant, "sigma must be positive");
  GaugeCheckResult res;
  res.eps_grid = eps_grid;
  res.delta_hat.reserve(eps_grid.size());
  res.passed = true;
  for (double eps : eps_grid) {
    double dh = gauge_modulus_empirical(body, ambient, eps, budget, seed);
    res.delta_hat.push_back(dh);
    double bound = sigma * eps * eps / 4.0;
    if (res.passed && dh < bound - 1e-12) {
      res.passed = false;
      res.failing_eps = eps;
    }
  }
  if (res.passed) {
    SigmaCertificate c;
    c.kind = CertKind::Estimated;
    RuleApplication app;
    app.rule = RuleKind::GaugeModulus;
    app.inputs = {sigma};
    app.output = apply_rule_formula(app.rule, app.inputs, app.constants);
    c.sigma = app.output;
    c.tolerance = 1e-12;
    c.trace.push_back(std::move(app));
    res.certificate = c;
  }
  return res;
}

}  // namespace sqckit
