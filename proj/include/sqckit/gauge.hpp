#pragma once

#include <memory>
#include <span>
#include <vector>

#include "sqckit/rng.hpp"
#include "sqckit/space.hpp"

namespace sqckit {

/// Bounded convex body with the origin in its interior; carries the gauge
/// functional inf{t > 0 : x in t*Body}.
class GaugeBody {
 public:
  enum class Kind { PNormBall, Box, Polytope, Ellipsoid };

  static GaugeBody pnorm_ball(SpaceSpec space, double radius);
  static GaugeBody box(Vec lo, Vec hi);
  /// Half-space intersection {x : a_i . x <= b_i}, all b_i > 0 so 0 is interior.
  static GaugeBody polytope(std::vector<Vec> rows, Vec offsets);
  /// {x : x^T Q x <= 1} for positive-definite Q (checked on samples).
  static GaugeBody ellipsoid(Matrix q);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  double gauge(std::span<const double> x) const;

  /// Point with gauge exactly 1 in direction v (v nonzero).
  Vec boundary_point(std::span<const double> v) const;

  const SpaceSpec* ball_space() const { return space_ ? &*space_ : nullptr; }
  double ball_radius() const { return radius_; }
  const Vec& box_lo() const { return lo_; }
  const Vec& box_hi() const { return hi_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const Vec& offsets() const { return offsets_; }
  const Matrix& quadratic_form() const { return q_; }

 private:
  explicit GaugeBody(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::size_t dim_ = 0;
  std::optional<SpaceSpec> space_;
  double radius_ = 0.0;
  Vec lo_, hi_;
  std::vector<Vec> rows_;
  Vec offsets_;
  Matrix q_;
};

}  // namespace sqckit
