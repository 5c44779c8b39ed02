#pragma once

#include <optional>

#include "sqckit/certificate.hpp"
#include "sqckit/domain.hpp"
#include "sqckit/expr.hpp"
#include "sqckit/map_descriptor.hpp"

namespace sqckit {

// Parameter formulas for the sigma-preserving operations. Pure arithmetic:
// derived certificates are bit-exact functions of their inputs.

/// c*f is (c*sigma)-quasiconvex for c > 0.
double rule_scale(double sigma, double c);
/// phi o f is (sigma_phi * ell^2)-quasiconvex when f is convex, phi
/// nondecreasing sigma_phi-quasiconvex, and ell ||x-u|| <= |f(x)-f(u)|.
double rule_compose(double sigma_phi, double ell);
/// sup of a family is inf(sigma_alpha)-quasiconvex.
double rule_sup(const std::vector<double>& sigmas);
/// Pointwise maximum of finitely many functions keeps min(sigma_i). The
/// pointwise-minimum variant is refutable; the corpus carries the witness.
double rule_max_finite(const std::vector<double>& sigmas);
/// Optimal value through a gamma-expansive convex map: sigma / gamma^2.
double rule_marginal(double sigma, double gamma);
/// Preimage under an affine map with operator norm ||A||: sigma / ||A||^2.
double rule_affine_preimage(double sigma, double opnorm);
/// f o B for affine B with ||x|| <= gamma ||Ax||: sigma / gamma^2.
double rule_affine_pre(double sigma, double gamma);
/// Infimal convolution under the sum norm keeps the joint sigma.
double rule_infconv(double sigma_joint);
/// Segment restriction: sigma * dist^2 on [0,1], sigma unchanged at unit speed.
double rule_restrict(double sigma, double dist, bool unit_speed);
/// Marginal minimum over a convex map under a product p-norm keeps sigma.
double rule_marginal_min(double sigma_joint);
/// Supremum over an affine process under a product p-norm keeps sigma.
double rule_sup_value(double sigma_joint);

// ---- constant estimation ----------------------------------------------------

struct ConstantEstimates {
  std::optional<double> ell_lower;
  std::optional<double> gamma;
  std::optional<double> opnorm;
};

/// Certified-from-samples lower-Lipschitz bound: inf |f(x)-f(u)| / ||x-u||
/// over sampled pairs in the domain.
double estimate_lower_lipschitz(const Expr& f, const ConvexDomain& domain, std::size_t budget,
                                std::uint64_t seed);

/// Sampled expansiveness sup ||x1-x2|| / ||y1-y2|| over graph pairs of the
/// map, with the product norm appropriate to the variant.
double estimate_expansiveness(const MapDescriptor& map, const ConvexDomain& domain,
                              std::size_t budget, std::uint64_t seed);

ConstantEstimates estimate_constants(const Expr& f, const MapDescriptor* map,
                                     const ConvexDomain& domain, std::size_t budget,
                                     std::uint64_t seed);

// ---- certificate derivation --------------------------------------------------

struct DeriveOptions {
  std::size_t spot_check_samples = 64;
  std::size_t estimate_budget = 20000;
  std::uint64_t seed = 0;
  double spot_check_tol = 1e-9;
  /// When true, nodes without declared sigma fall back to the numerical
  /// estimator over `domain`; the resulting certificate is `estimated`.
  bool allow_estimation = true;
};

/// Walks the expression and propagates certificates by the rules above.
/// Declared sigmas are trusted but spot-checked (a sampled contradiction
/// throws rather than propagating); combinator constants come from the node,
/// from exact formulas, or from sampling (downgrading kind to estimated).
SigmaCertificate derive_certificate(const ExprPtr& f, const ConvexDomain& domain,
                                    const DeriveOptions& opts = {});

}  // namespace sqckit
