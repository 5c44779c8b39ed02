#include "sqckit/space.hpp"

#include <algorithm>
#include <cmath>

#include "sqckit/rng.hpp"

namespace sqckit {

SpaceSpec::SpaceSpec(std::size_t dim, double p) : dim_(dim), p_(p) {
  if (dim == 0) fail(ErrorCode::InvalidConstant, "space dimension must be at least 1");
  if (std::isnan(p) || p <= 1.0)
    fail(ErrorCode::InvalidConstant, "norm exponent must lie in (1, inf]");
}

double SpaceSpec::norm(std::span<const double> x) const {
  if (x.size() != dim_) fail(ErrorCode::DimensionMismatch, "point dimension != space dimension");
  if (is_max_norm()) {
    double m = 0.0;
    for (double xi : x) m = std::max(m, std::abs(xi));
    return m;
  }
  if (p_ == 2.0) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double xi : x) s += std::pow(std::abs(xi), p_);
  return std::pow(s, 1.0 / p_);
}

double SpaceSpec::distance(std::span<const double> x, std::span<const double> y) const {
  Vec d = sub(x, y);
  return norm(d);
}

Vec SpaceSpec::normalized(std::span<const double> v) const {
  double n = norm(v);
  if (n <= 0.0) fail(ErrorCode::DegenerateSamples, "cannot normalize the zero vector");
  return scaled(v, 1.0 / n);
}

ProductNorm::ProductNorm(SpaceSpec l, SpaceSpec r, double q_combine)
    : left(l), right(r), q(q_combine) {
  if (std::isnan(q) || q < 1.0)
    fail(ErrorCode::InvalidConstant, "product combine exponent must lie in [1, inf]");
}

double ProductNorm::norm(std::span<const double> xy) const {
  if (xy.size() != dim()) fail(ErrorCode::DimensionMismatch, "product point dimension mismatch");
  double a = left.norm(xy.subspan(0, left.dim()));
  double b = right.norm(xy.subspan(left.dim()));
  if (q == kPInfinity) return std::max(a, b);
  if (q == 1.0) return a + b;
  if (q == 2.0) return std::sqrt(a * a + b * b);
  return std::pow(std::pow(a, q) + std::pow(b, q), 1.0 / q);
}

double ProductNorm::distance(std::span<const double> a, std::span<const double> b) const {
  Vec d = sub(a, b);
  return norm(d);
}

OperatorNormEstimate operator_norm(const Matrix& a, const SpaceSpec& domain_space,
                                   const SpaceSpec& range_space, std::size_t budget,
                                   std::uint64_t seed) {
  if (a.cols() != domain_space.dim() || a.rows() != range_space.dim())
    fail(ErrorCode::DimensionMismatch, "operator shape does not match spaces");

  bool zero = true;
  for (double v : a.data())
    if (v != 0.0) zero = false;
  if (zero) fail(ErrorCode::ZeroOperator, "operator norm of the zero matrix");

  if (a.is_diagonal() && domain_space.p() == range_space.p() &&
      (domain_space.p() == 2.0 || domain_space.is_max_norm())) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, i)));
    return {m, true};
  }

  // Sampled supremum: coordinate directions first, then random unit vectors.
  Rng rng(seed);
  double best = 0.0;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    Vec e(a.cols(), 0.0);
    e[i] = 1.0;
    best = std::max(best, range_space.norm(a.apply(e)));
  }
  for (std::size_t k = 0; k < budget; ++k) {
    Vec v = rng.normal_vector(a.cols());
    double n = domain_space.norm(v);
    if (n <= 1e-300) continue;
    best = std::max(best, range_space.norm(a.apply(scaled(v, 1.0 / n))));
  }
  return {best * 1.01, false};
}

}  // namespace sqckit
