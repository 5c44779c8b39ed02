#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include "sqckit/linalg.hpp"

namespace sqckit {

inline constexpr double kPInfinity = std::numeric_limits<double>::infinity();

/// Ambient space: dimension and the p-norm exponent. p lies in (1, inf];
/// p = inf is the max norm. p = 1 is rejected because the modulus-of-convexity
/// machinery needs p strictly above 1.
class SpaceSpec {
 public:
  SpaceSpec(std::size_t dim, double p);

  std::size_t dim() const { return dim_; }
  double p() const { return p_; }
  bool is_max_norm() const { return p_ == kPInfinity; }
  bool is_inner_product() const { return p_ == 2.0; }

  double norm(std::span<const double> x) const;
  double distance(std::span<const double> x, std::span<const double> y) const;

  /// Scales v to unit norm; zero vectors throw DegenerateSamples.
  Vec normalized(std::span<const double> v) const;

  friend bool operator==(const SpaceSpec& a, const SpaceSpec& b) {
    return a.dim_ == b.dim_ && a.p_ == b.p_;
  }

 private:
  std::size_t dim_;
  double p_;
};

/// Norm on a product X x Y: combines the two block norms with exponent q in
/// [1, inf]. q = 1 is the sum norm used by the infimal-convolution rule.
struct ProductNorm {
  SpaceSpec left;
  SpaceSpec right;
  double q = 2.0;

  ProductNorm(SpaceSpec l, SpaceSpec r, double q_combine);

  std::size_t dim() const { return left.dim() + right.dim(); }
  double norm(std::span<const double> xy) const;
  double distance(std::span<const double> a, std::span<const double> b) const;
};

/// Either a plain p-norm or a product norm; the distance notion the
/// certifier quantifies over.
class NormSpec {
 public:
  NormSpec(SpaceSpec s) : simple_(s) {}  // NOLINT(google-explicit-constructor)
  NormSpec(ProductNorm p) : product_(p) {}  // NOLINT(google-explicit-constructor)

  std::size_t dim() const { return simple_ ? simple_->dim() : product_->dim(); }
  double norm(std::span<const double> x) const {
    return simple_ ? simple_->norm(x) : product_->norm(x);
  }
  double distance(std::span<const double> a, std::span<const double> b) const {
    return simple_ ? simple_->distance(a, b) : product_->distance(a, b);
  }
  bool is_product() const { return product_.has_value(); }
  const SpaceSpec* simple() const { return simple_ ? &*simple_ : nullptr; }

 private:
  std::optional<SpaceSpec> simple_;
  std::optional<ProductNorm> product_;
};

/// Operator norm bounds for the affine-preimage rule.
struct OperatorNormEstimate {
  double value = 0.0;
  bool exact = false;  // true only for diagonal A with p in {2, inf}
};

/// Exact for diagonal matrices under p in {2, inf}; otherwise a sampled
/// supremum of ||Av|| over unit vectors, inflated by 1.01 so that dividing
/// by it stays on the safe side.
OperatorNormEstimate operator_norm(const Matrix& a, const SpaceSpec& domain_space,
                                   const SpaceSpec& range_space, std::size_t budget,
                                   std::uint64_t seed);

}  // namespace sqckit
