#include "sqckit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqckit/parallel.hpp"

namespace sqckit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Objective = std::function<double(std::span<const double>)>;

struct StartResult {
  Vec point;
  double value = kInf;
  bool converged = false;
};

StartResult compass_search(const Objective& f, const ConvexDomain& domain,
                           const std::vector<Vec>& landmarks, Vec x0, double tol) {
  std::size_t n = domain.dim();
  Vec x = domain.project(x0);
  double fx = f(x);
  double h = std::max(domain.diameter() / 8.0, tol);
  std::size_t guard = 400 * n * 64;

  while (h >= tol && guard-- > 0) {
    Vec best_trial;
    double best_val = fx;
    for (std::size_t i = 0; i < n; ++i) {
      for (double dir : {+1.0, -1.0}) {
        Vec trial = x;
        trial[i] += dir * h;
        trial = domain.project(trial);
        double v = f(trial);
        if (v < best_val) {
          best_val = v;
          best_trial = std::move(trial);
        }
      }
    }
    // Landmarks inside the current step radius attract the search; exact
    // override points are otherwise unreachable by axis steps.
    for (const auto& l : landmarks) {
      if (l.size() != n || !domain.contains(l)) continue;
      if (domain.space().distance(l, x) <= 2.0 * h) {
        double v = f(l);
        if (v < best_val) {
          best_val = v;
          best_trial = l;
        }
      }
    }
    if (best_val < fx) {
      x = std::move(best_trial);
      fx = best_val;
    } else {
      h *= 0.5;
    }
  }
  return {std::move(x), fx, true};
}

struct SuspectScan {
  bool suspect = false;
  Vec limit_point;
};

// Probes f along a geometric approach from p* toward each candidate limit
// point. Flags non-attainment when the values keep strictly decreasing over
// three refinement scales toward a limit that undercuts both the best found
// value and the value at the limit point itself.
SuspectScan attainment_scan(const Objective& f, const ConvexDomain& domain,
                            const std::vector<Vec>& candidates, const Vec& pstar,
                            double best_value) {
  SuspectScan out;
  for (const auto& s : candidates) {
    if (s.size() != pstar.size()) continue;
    double dist = domain.space().distance(s, pstar);
    if (dist <= 0.0) continue;
    double fs = f(s);
    constexpr int kDepth = 36;
    double level_min[3] = {kInf, kInf, kInf};
    double scale = 1.0;
    bool in_domain = true;
    for (int m = 0; m < kDepth; ++m) {
      scale *= 0.5;
      Vec t = combine(pstar, s, scale);  // scale -> 0 approaches s
      if (!domain.contains(t)) {
        in_domain = false;
        break;
      }
      level_min[m / 12] = std::min(level_min[m / 12], f(t));
    }
    if (!in_domain) continue;
    bool decreasing = level_min[0] > level_min[1] && level_min[1] > level_min[2];
    double limit = level_min[2];
    double tau = 1e-9 * (1.0 + std::abs(fs));
    if (decreasing && limit < fs - tau && limit <= best_value + tau) {
      out.suspect = true;
      out.limit_point = s;
      return out;
    }
  }
  return out;
}

MinimizeResult run_minimize(const Objective& f, const ConvexDomain& domain,
                            const std::vector<Vec>& landmarks, const MinimizeOptions& opts) {
  if (opts.tol <= 0.0) fail(ErrorCode::InvalidConstant, "tolerance must be positive");
  std::vector<Vec> starts = landmarks;
  {
    Rng rng(opts.seed);
    while (starts.size() < std::max<std::size_t>(opts.starts, landmarks.size()))
      starts.push_back(domain.sample(rng));
  }

  std::vector<StartResult> results(starts.size());
  parallel_chunks(starts.size(), opts.threads, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      results[i] = compass_search(f, domain, landmarks, starts[i], opts.tol);
  });

  MinimizeResult res;
  res.sublevel_bound = domain.diameter() / 2.0;

  // Deterministic clustering: order by (value, index), merge points within
  // 10 tol in norm and 100 tol in value.
  std::vector<std::size_t> order(results.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (results[a].value != results[b].value) return results[a].value < results[b].value;
    return a < b;
  });

  for (std::size_t idx : order) {
    const StartResult& r = results[idx];
    if (!std::isfinite(r.value)) continue;
    ++res.starts_converged;
    bool merged = false;
    for (auto& c : res.distinct_local_minima) {
      if (domain.space().distance(c.point, r.point) <= 10.0 * opts.tol &&
          std::abs(c.value - r.value) <= 100.0 * opts.tol * (1.0 + std::abs(c.value))) {
        ++c.members;
        merged = true;
        break;
      }
    }
    if (!merged) res.distinct_local_minima.push_back({r.point, r.value, 1});
  }
  if (res.distinct_local_minima.empty())
    fail(ErrorCode::NoFiniteValueFound, "objective is +inf at every probed point");

  res.argmin = res.distinct_local_minima.front().point;
  res.value = ExtReal(res.distinct_local_minima.front().value);

  std::vector<Vec> candidates = landmarks;
  for (const auto& p : domain.extreme_points()) candidates.push_back(p);
  SuspectScan scan =
      attainment_scan(f, domain, candidates, res.argmin, res.value.value());
  res.attainment_suspect = scan.suspect;
  res.suspect_limit_point = scan.limit_point;
  return res;
}

}  // namespace

MinimizeResult minimize(const Expr& f, const ConvexDomain& domain, const MinimizeOptions& opts) {
  if (f.input_dim() != domain.dim())
    fail(ErrorCode::DimensionMismatch, "function and domain dimensions differ");
  Objective obj = [&f](std::span<const double> x) { return f.eval(x).value(); };
  return run_minimize(obj, domain, probe_points(f, domain), opts);
}

MinimizeResult minimize_objective(const Objective& objective, const ConvexDomain& domain,
                                  const std::vector<Vec>& landmarks,
                                  const MinimizeOptions& opts) {
  std::vector<Vec> starts = landmarks;
  for (const auto& p : domain.extreme_points()) starts.push_back(p);
  starts.push_back(domain.center());
  return run_minimize(objective, domain, starts, opts);
}

GrowthReport quadratic_growth_check(const Expr& f, const Vec& xbar, double sigma,
                                    const ConvexDomain& domain, std::size_t samples,
                                    std::uint64_t seed) {
  if (sigma < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  GrowthReport rep;
  rep.sigma = sigma;
  rep.xbar = xbar;
  rep.f_xbar = f.eval(xbar).value();
  if (std::isinf(rep.f_xbar))
    fail(ErrorCode::NoFiniteValueFound, "growth check needs a finite value at xbar");

  Rng rng(seed);
  std::vector<Vec> pts = probe_points(f, domain);
  while (pts.size() < samples) pts.push_back(domain.sample(rng));

  auto check_bound = [&](const Vec& y, double coeff, std::vector<GrowthViolation>& sink) {
    double d = domain.space().distance(y, xbar);
    double bound = rep.f_xbar + coeff * sigma * d * d;
    double fy = f.eval(y).value();
    if (fy < bound - 1e-9 * (1.0 + std::abs(bound))) sink.push_back({y, fy, bound});
  };
  for (const auto& y : pts) {
    check_bound(y, 0.25, rep.violations);
    check_bound(y, 0.125, rep.violations_eighth);
    ++rep.samples;
  }
  return rep;
}

CoercivityProfile supercoercivity_profile(const Expr& f, const Vec& x0, int order,
                                          const Vec& radii, std::size_t samples_per_radius,
                                          std::uint64_t seed, const SpaceSpec& space,
                                          const std::optional<ConvexDomain>& constraint,
                                          std::optional<double> sigma) {
  if (order < 1) fail(ErrorCode::InvalidConstant, "supercoercivity order must be >= 1");
  if (radii.size() < 3) fail(ErrorCode::InvalidConstant, "need at least 3 radii");
  if (!std::is_sorted(radii.begin(), radii.end()))
    fail(ErrorCode::InvalidConstant, "radii must be increasing");

  CoercivityProfile prof;
  prof.order = order;
  prof.radii = radii;
  Rng rng(seed);
  std::size_t n = space.dim();

  for (double radius : radii) {
    double inf_ratio = kInf;
    Vec arg;
    std::size_t on_shell = 0;
    auto consider = [&](const Vec& x) {
      if (constraint && !constraint->contains(x)) return;
      double fx = f.eval(x).value();
      ++on_shell;
      if (std::isinf(fx)) return;
      double ratio = fx / std::pow(radius, static_cast<double>(order));
      if (ratio < inf_ratio) {
        inf_ratio = ratio;
        arg = x;
      }
    };
    if (n == 1) {
      consider({radius});
      consider({-radius});
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = radius;
        consider(e);
        e[i] = -radius;
        consider(e);
      }
      for (std::size_t k = 0; k < samples_per_radius; ++k) {
        Vec d = rng.normal_vector(n);
        double nd = space.norm(d);
        if (nd <= 1e-300) continue;
        consider(scaled(d, radius / nd));
      }
    }
    if (on_shell == 0)
      fail(ErrorCode::EmptyShell,
           "the constraint set misses the sphere of radius " + std::to_string(radius));
    prof.inf_ratios.push_back(inf_ratio);
    prof.arg_points.push_back(arg);
  }

  std::size_t m = prof.inf_ratios.size();
  double tail_min = std::min(prof.inf_ratios[m - 1], prof.inf_ratios[m - 2]);
  bool nondecreasing_tail =
      prof.inf_ratios[m - 1] + 1e-9 * (1.0 + std::abs(prof.inf_ratios[m - 1])) >=
      prof.inf_ratios[m - 2];
  if (tail_min <= 0.0)
    prof.verdict = CoercivityProfile::Verdict::Negative;
  else if (nondecreasing_tail && tail_min > 1e-12)
    prof.verdict = CoercivityProfile::Verdict::PositiveLiminf;
  else
    prof.verdict = CoercivityProfile::Verdict::Inconclusive;

  if (sigma) {
    double radius = radii.back();
    double fx0 = f.eval(x0).value();
    for (std::size_t k = 0; k < std::max<std::size_t>(samples_per_radius, 2); ++k) {
      Vec y;
      if (n == 1)
        y = {k % 2 == 0 ? radius : -radius};
      else {
        Vec d = rng.normal_vector(n);
        double nd = space.norm(d);
        if (nd <= 1e-300) continue;
        y = scaled(d, radius / nd);
      }
      if (constraint && !constraint->contains(y)) continue;
      double fy = f.eval(y).value();
      if (std::isinf(fy)) continue;
      double dyx = space.distance(y, x0);
      double bound = fx0 + (*sigma / 8.0) * dyx * dyx;
      if (fy < bound - 1e-9 * (1.0 + std::abs(bound)))
        prof.growth_violations.push_back({y, fy, bound});
    }
  }
  return prof;
}

ProxResult prox(const Expr& f, const Vec& v, std::optional<ConvexDomain> search_domain,
                double tol, std::uint64_t seed) {
  std::size_t n = f.input_dim();
  if (v.size() != n) fail(ErrorCode::DimensionMismatch, "prox center dimension");
  SpaceSpec space = search_domain ? search_domain->space() : SpaceSpec(n, 2.0);

  ConvexDomain domain = [&] {
    if (search_domain) return *search_domain;
    double fv = f.eval(v).value();
    if (std::isinf(fv))
      fail(ErrorCode::NoFiniteValueFound,
           "default prox ball needs a finite f(v); pass a search domain instead");
    double radius = std::max(8.0, 8.0 * (1.0 + std::abs(fv)));
    return ConvexDomain::ball(v, radius, space);
  }();

  Objective g = [&](std::span<const double> x) {
    double q = 0.5 * space.distance(x, v) * space.distance(x, v);
    return f.eval(x).value() + q;
  };
  std::vector<Vec> landmarks = probe_points(f, domain);
  landmarks.push_back(v);

  MinimizeOptions mo;
  mo.tol = tol;
  mo.seed = seed;
  mo.starts = 32;
  MinimizeResult inner = run_minimize(g, domain, landmarks, mo);

  ProxResult out;
  out.search = inner;
  out.attainment_suspect = inner.attainment_suspect;
  out.value = inner.value.value();
  if (!inner.attainment_suspect) {
    for (const auto& c : inner.distinct_local_minima) {
      if (c.value <= inner.value.value() + 100.0 * tol * (1.0 + std::abs(inner.value.value())))
        out.points.push_back(c.point);
    }
  }
  return out;
}

}  // namespace sqckit
