#include "sqckit/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqckit/parallel.hpp"

namespace sqckit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const double kLambdaGrid[] = {0.5, 0.25, 0.75, 0.1, 0.9, 0.01, 0.99};

// Oracle lambda ladder: dense near both endpoints because the analytic
// infima of the corpus functions are approached as lambda -> 0 or 1.
const double kOracleLambdas[] = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1,  0.25,
                                 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75, 0.9,  0.95, 0.98,
                                 0.99, 0.995, 0.998, 0.999};

double violation_tau(double max_value) { return 1e-9 * (1.0 + std::abs(max_value)); }

// Deterministic triple stream: caller hints, then landmark/extreme-point
// pairs crossed with the lambda grid, then the seeded biased sampler.
std::vector<Triple> generate_triples(const Expr& f, const ConvexDomain& domain,
                                     std::size_t budget, std::uint64_t seed,
                                     const std::vector<Triple>& hints) {
  std::vector<Triple> out;
  out.reserve(budget);

  for (const auto& h : hints) {
    if (out.size() >= budget) return out;
    if (h.x.size() == domain.dim() && h.y.size() == domain.dim() && h.lambda > 0.0 &&
        h.lambda < 1.0)
      out.push_back(h);
  }

  std::vector<Vec> probes = probe_points(f, domain);
  for (std::size_t i = 0; i < probes.size() && out.size() < budget; ++i) {
    for (std::size_t j = i + 1; j < probes.size() && out.size() < budget; ++j) {
      if (probes[i] == probes[j]) continue;
      for (double lam : kLambdaGrid) {
        if (out.size() >= budget) break;
        out.push_back({probes[i], probes[j], lam});
      }
    }
  }

  Rng rng(seed);
  Vec center = domain.center();
  double diam = domain.diameter();
  std::size_t lam_cursor = 0;
  std::size_t draw = 0;
  while (out.size() < budget) {
    ++draw;
    double cls = rng.uniform();
    Vec x, y;
    if (cls < 0.5) {
      x = domain.sample(rng);
      y = domain.sample(rng);
    } else if (cls < 0.75) {
      x = domain.sample_boundary(rng);
      y = (draw % 2 == 0) ? domain.sample_boundary(rng) : domain.sample(rng);
    } else {
      x = domain.sample(rng);
      y = combine(center, x, 2.0);  // reflection through the center
      if (draw % 2 == 1) {
        Vec noise = rng.normal_vector(domain.dim());
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += 1e-3 * diam * noise[k];
        y = domain.project(y);
      }
    }
    double lam;
    if (draw % 2 == 0) {
      lam = kLambdaGrid[lam_cursor % std::size(kLambdaGrid)];
      ++lam_cursor;
    } else {
      lam = std::clamp(rng.uniform(), 1e-6, 1.0 - 1e-6);
    }
    if (x == y) continue;  // coincident pairs carry no information
    out.push_back({std::move(x), std::move(y), lam});
  }
  return out;
}

struct TripleEval {
  bool usable = false;
  double max_value = 0.0;  // +inf allowed
  double fz = 0.0;         // +inf allowed
  double dist2 = 0.0;
  Vec z;
};

TripleEval eval_triple(const Expr& f, const Triple& t, const NormSpec& norm,
                       const ConvexDomain* domain) {
  TripleEval e;
  double d = norm.distance(t.x, t.y);
  e.dist2 = d * d;
  if (!(e.dist2 > 0.0)) return e;
  e.z = combine(t.x, t.y, t.lambda);
  if (domain && !domain->contains(e.z, 1e-9 * (1.0 + d)))
    fail(ErrorCode::MidpointOutsideDomain, "convex combination left the domain");
  double fx = f.eval(t.x).value();
  double fy = f.eval(t.y).value();
  e.max_value = std::max(fx, fy);
  e.fz = f.eval(e.z).value();
  e.usable = true;
  return e;
}

}  // namespace

double defect(const Expr& f, const Triple& t, const NormSpec& norm) {
  TripleEval e = eval_triple(f, t, norm, nullptr);
  if (!e.usable) fail(ErrorCode::DegenerateSamples, "defect of a coincident pair");
  if (std::isinf(e.max_value)) return kInf;  // inequality holds trivially
  if (std::isinf(e.fz)) return -kInf;
  return e.max_value - e.fz;
}

double sigma_ratio(const Expr& f, const Triple& t, const NormSpec& norm) {
  double d = norm.distance(t.x, t.y);
  double den = t.lambda * (1.0 - t.lambda) * d * d;
  if (den < 1e-12) fail(ErrorCode::DegenerateSamples, "sigma ratio denominator too small");
  return 2.0 * defect(f, t, norm) / den;
}

std::optional<ViolationWitness> falsify(const Expr& f, const ConvexDomain& domain, double sigma,
                                        std::size_t budget, std::uint64_t seed,
                                        const SearchOptions& opts) {
  if (budget < 1) fail(ErrorCode::InvalidConstant, "falsify budget must be at least 1");
  if (sigma < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  NormSpec norm = opts.norm ? *opts.norm : NormSpec(domain.space());
  std::vector<Triple> triples = generate_triples(f, domain, budget, seed, opts.hints);

  std::size_t n = triples.size();
  std::vector<std::size_t> chunk_hit(64, n);
  int threads = std::clamp(opts.threads, 1, 64);
  std::size_t nchunks = std::min<std::size_t>(static_cast<std::size_t>(threads), n ? n : 1);

  parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      TripleEval ev = eval_triple(f, triples[i], norm, &domain);
      if (!ev.usable || std::isinf(ev.max_value)) continue;
      double rhs = ev.max_value -
                   0.5 * sigma * triples[i].lambda * (1.0 - triples[i].lambda) * ev.dist2;
      if (ev.fz > rhs + violation_tau(ev.max_value)) {
        chunk_hit[chunk] = i;
        return;  // first hit in this chunk is the smallest index of the chunk
      }
    }
  });

  std::size_t best = n;
  for (std::size_t c = 0; c < nchunks; ++c) best = std::min(best, chunk_hit[c]);
  if (best == n) return std::nullopt;

  const Triple& t = triples[best];
  TripleEval ev = eval_triple(f, t, norm, &domain);
  ViolationWitness w;
  w.triple = t;
  w.lhs = ExtReal(ev.fz);
  w.rhs = ev.max_value - 0.5 * sigma * t.lambda * (1.0 - t.lambda) * ev.dist2;
  w.margin = ev.fz - w.rhs;
  w.sigma = sigma;
  w.tolerance = violation_tau(ev.max_value);
  return w;
}

SigmaEstimate estimate_sigma(const Expr& f, const ConvexDomain& domain, std::size_t budget,
                             std::uint64_t seed, const SearchOptions& opts) {
  if (budget < 1) fail(ErrorCode::InvalidConstant, "estimate budget must be at least 1");
  NormSpec norm = opts.norm ? *opts.norm : NormSpec(domain.space());
  std::vector<Triple> triples = generate_triples(f, domain, budget, seed, opts.hints);

  std::size_t n = triples.size();
  int threads = std::clamp(opts.threads, 1, 64);
  std::size_t nchunks = std::min<std::size_t>(static_cast<std::size_t>(threads), n ? n : 1);
  struct ChunkBest {
    double ratio = kInf;
    std::size_t index = static_cast<std::size_t>(-1);
    std::size_t used = 0;
  };
  std::vector<ChunkBest> bests(64);

  parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t b, std::size_t e) {
    ChunkBest cb;
    for (std::size_t i = b; i < e; ++i) {
      const Triple& t = triples[i];
      TripleEval ev = eval_triple(f, t, norm, &domain);
      if (!ev.usable) continue;
      double den = t.lambda * (1.0 - t.lambda) * ev.dist2;
      if (den < 1e-12) continue;
      if (std::isinf(ev.max_value)) continue;  // trivially satisfied
      double ratio = std::isinf(ev.fz) ? -kInf : 2.0 * (ev.max_value - ev.fz) / den;
      ++cb.used;
      if (ratio < cb.ratio) {
        cb.ratio = ratio;
        cb.index = i;
      }
    }
    bests[chunk] = cb;
  });

  SigmaEstimate est;
  est.grid_spec = "prefix+biased(u50/b25/a25),lambda-grid+uniform";
  double best_ratio = kInf;
  std::size_t best_index = static_cast<std::size_t>(-1);
  for (std::size_t c = 0; c < nchunks; ++c) {
    est.samples_used += bests[c].used;
    if (bests[c].ratio < best_ratio ||
        (bests[c].ratio == best_ratio && bests[c].index < best_index)) {
      best_ratio = bests[c].ratio;
      best_index = bests[c].index;
    }
  }
  if (best_index == static_cast<std::size_t>(-1))
    fail(ErrorCode::AllSamplesDegenerate, "no usable triples in the budget");

  est.raw_infimum = best_ratio;
  est.argmin_triple = triples[best_index];
  est.sigma_hat = std::max(0.0, best_ratio);
  if (best_ratio < 0.0) {
    est.quasiconvex = false;
    const Triple& t = est.argmin_triple;
    TripleEval ev = eval_triple(f, t, norm, &domain);
    ViolationWitness w;
    w.triple = t;
    w.lhs = ExtReal(ev.fz);
    w.rhs = ev.max_value;  // sigma = 0: plain quasiconvexity refuted
    w.margin = ev.fz - w.rhs;
    w.sigma = 0.0;
    w.tolerance = violation_tau(ev.max_value);
    est.witness = w;
  }
  return est;
}

OracleResult oracle_sigma_1d(const Expr& f, double lo, double hi, int grid_n) {
  if (f.input_dim() != 1) fail(ErrorCode::DimensionMismatch, "oracle needs a 1-D expression");
  if (grid_n < 3) fail(ErrorCode::GridTooCoarse, "oracle grid needs at least 3 points");
  if (!(lo < hi)) fail(ErrorCode::LoAboveHi, "oracle interval is degenerate");

  const double h = (hi - lo) / static_cast<double>(grid_n - 1);
  std::vector<double> table(grid_n);
  std::vector<double> ts(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    ts[i] = (i == grid_n - 1) ? hi : lo + h * i;
    table[i] = f.eval1(ts[i]).value();
  }

  OracleResult res;
  res.sigma_hat = kInf;
  std::size_t used = 0;
  int best_i = -1, best_j = -1, best_k = -1;

  // For a pair (i, j = i + m) the rounded combination index is j - o with
  // o = round(lam * m), so the effective lambda and the denominator depend
  // only on (m, lam). Hoisting them keeps the hot loop division-free: a
  // candidate improves the incumbent sigma iff 2 (vmax - vk) < sigma * den.
  for (int m = 1; m < grid_n; ++m) {
    double dt2 = (m * h) * (m * h);
    for (double lam : kOracleLambdas) {
      int o = static_cast<int>(std::llround(lam * m));
      if (o <= 0 || o >= m) continue;  // rounded onto an endpoint: degenerate
      double lam_eff = static_cast<double>(o) / static_cast<double>(m);
      double den = lam_eff * (1.0 - lam_eff) * dt2;
      if (den < 1e-12) continue;
      for (int i = 0; i + m < grid_n; ++i) {
        int j = i + m;
        double vmax = std::max(table[i], table[j]);
        if (std::isinf(vmax)) continue;  // trivially satisfied pair
        double vk = table[j - o];
        double two_defect = std::isinf(vk) ? -kInf : 2.0 * (vmax - vk);
        ++used;
        if (two_defect < res.sigma_hat * den) {
          res.sigma_hat = two_defect / den;
          best_i = i;
          best_j = j;
          best_k = j - o;
        }
      }
    }
  }
  if (used < 3) fail(ErrorCode::GridTooCoarse, "fewer than 3 usable oracle triples");
  res.triples_used = used;
  res.argmin_triple = {{ts[best_i]},
                       {ts[best_j]},
                       static_cast<double>(best_k - best_j) / static_cast<double>(best_i - best_j)};
  return res;
}

SigmaEstimate certify_on_segments(const Expr& f, const ConvexDomain& domain,
                                  std::size_t segment_count, int grid_n, std::uint64_t seed) {
  if (segment_count < 1) fail(ErrorCode::InvalidConstant, "need at least one segment");
  Rng rng(seed);
  SigmaEstimate est;
  est.grid_spec = "unit-speed segments x 1-D oracle";
  est.raw_infimum = kInf;

  std::vector<Vec> probes = probe_points(f, domain);
  std::size_t done = 0;
  std::size_t draw = 0;
  while (done < segment_count) {
    Vec u, x;
    if (done < probes.size() && probes.size() >= 2) {
      // deterministic prefix: consecutive probe pairs (extremes first)
      u = probes[done % probes.size()];
      x = probes[(done + 1) % probes.size()];
    } else if (draw % 4 == 0) {
      u = domain.sample_boundary(rng);
      x = domain.sample_boundary(rng);
    } else {
      u = domain.sample(rng);
      x = domain.sample(rng);
    }
    ++draw;
    double d = domain.space().distance(x, u);
    if (d < 1e-9) {
      if (draw > 16 * segment_count) fail(ErrorCode::DegenerateSamples, "segments degenerate");
      continue;
    }
    ++done;
    // Wrap f by reference so the restriction does not need ownership.
    struct Ref final : Expr {
      const Expr* inner;
      explicit Ref(const Expr* e) : inner(e) {}
      std::size_t input_dim() const override { return inner->input_dim(); }
      ExtReal eval(std::span<const double> p) const override { return inner->eval(p); }
      const char* kind() const override { return inner->kind(); }
    };
    auto shim = std::make_shared<Ref>(&f);
    Restrict restricted(shim, u, x, domain.space(), true);
    OracleResult r = oracle_sigma_1d(restricted, 0.0, d, grid_n);
    est.samples_used += r.triples_used;
    if (r.sigma_hat < est.raw_infimum) {
      est.raw_infimum = r.sigma_hat;
      double lam = r.argmin_triple.lambda;
      Vec dir = scaled(sub(x, u), 1.0 / d);
      Vec px = add(u, scaled(dir, r.argmin_triple.x[0]));
      Vec py = add(u, scaled(dir, r.argmin_triple.y[0]));
      est.argmin_triple = {px, py, lam};
    }
  }
  est.sigma_hat = std::max(0.0, est.raw_infimum);
  est.quasiconvex = est.raw_infimum >= 0.0;
  return est;
}

}  // namespace sqckit
