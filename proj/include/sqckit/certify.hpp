#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqckit/domain.hpp"
#include "sqckit/expr.hpp"
#include "sqckit/witness.hpp"

namespace sqckit {

/// Knobs shared by the falsifier and the estimator. The probe hints are
/// deterministic triples tried before the seeded stream (fixtures carry the
/// known witnesses of the corpus there); they count against the budget.
struct SearchOptions {
  int threads = 1;
  std::vector<Triple> hints;
  std::optional<NormSpec> norm;  // defaults to the domain's space norm
};

/// max{f(x), f(y)} - f(lambda x + (1-lambda) y), as a plain double:
/// +inf when the max is infinite (the inequality then holds trivially),
/// -inf when only the combination value is infinite (a refutation at any
/// sigma).
double defect(const Expr& f, const Triple& t, const NormSpec& norm);

/// 2 * defect / (lambda (1-lambda) ||x-y||^2); the best sigma this triple
/// tolerates.
double sigma_ratio(const Expr& f, const Triple& t, const NormSpec& norm);

/// Searches for a violation of sigma-quasiconvexity over seeded triples
/// (biased pair sampling: uniform, near-boundary, near-antipodal; lambda from
/// a fixed grid plus uniform draws) after a deterministic probe prefix of
/// expression landmarks and caller hints. Declares a violation when
/// f(z) > max - (sigma/2) lam (1-lam) d^2 + tau with tau = 1e-9 (1 + |max|),
/// and returns the violating triple of smallest stream index, or nothing
/// after budget exhaustion. A "none" outcome is not a proof.
std::optional<ViolationWitness> falsify(const Expr& f, const ConvexDomain& domain, double sigma,
                                        std::size_t budget, std::uint64_t seed,
                                        const SearchOptions& opts = {});

struct SigmaEstimate {
  double sigma_hat = 0.0;  // infimum of sampled ratios, clamped below at 0
  double raw_infimum = 0.0;
  Triple argmin_triple;
  std::size_t samples_used = 0;
  std::string grid_spec;
  bool quasiconvex = true;  // false when a negative ratio was found
  std::optional<ViolationWitness> witness;
};

/// Infimum of sigma ratios over the sampled triples; denominators below
/// 1e-12 are skipped. A negative ratio reports the function as
/// not-quasiconvex with the witness.
SigmaEstimate estimate_sigma(const Expr& f, const ConvexDomain& domain, std::size_t budget,
                             std::uint64_t seed, const SearchOptions& opts = {});

struct OracleResult {
  double sigma_hat = 0.0;
  Triple argmin_triple;
  std::size_t triples_used = 0;
};

/// Brute-force reference for 1-D functions: exhaustive over all grid pairs
/// and a fixed lambda ladder whose combinations are rounded onto the grid
/// (so every function value comes from a precomputed table), plus the exact
/// midpoint family. Deterministic, seed-free; may return a negative value
/// for non-quasiconvex functions.
OracleResult oracle_sigma_1d(const Expr& f, double lo, double hi, int grid_n);

/// Unit-speed segment reduction: random segments through the domain, the 1-D
/// oracle on each restriction, minimum across segments.
SigmaEstimate certify_on_segments(const Expr& f, const ConvexDomain& domain,
                                  std::size_t segment_count, int grid_n, std::uint64_t seed);

}  // namespace sqckit
