#pragma once

#include <span>
#include <vector>

#include "sqckit/rng.hpp"
#include "sqckit/space.hpp"

namespace sqckit {

/// Compact convex search region. Always nonempty and bounded; membership is
/// closed under convex combination by construction.
class ConvexDomain {
 public:
  enum class Kind { Ball, Box, Segment, Interval };

  static ConvexDomain ball(Vec center, double radius, SpaceSpec space);
  static ConvexDomain box(Vec lo, Vec hi, SpaceSpec space);
  static ConvexDomain segment(Vec a, Vec b, SpaceSpec space);
  static ConvexDomain interval(double lo, double hi, double p = 2.0);

  Kind kind() const { return kind_; }
  const SpaceSpec& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }

  bool contains(std::span<const double> x, double tol = 1e-12) const;

  /// Geometric center (ball center, box/interval midpoint, segment midpoint).
  Vec center() const;
  /// Largest distance between two members, in the domain's own norm.
  double diameter() const;

  /// Nearest member to x (clamp for boxes, radial pull for balls,
  /// parameter clamp for segments).
  Vec project(std::span<const double> x) const;

  Vec sample(Rng& rng) const;
  /// Point at (or numerically on) the boundary.
  Vec sample_boundary(Rng& rng) const;

  /// Deterministic extreme points: interval endpoints, box corners (capped),
  /// ball axis points and center, segment endpoints.
  std::vector<Vec> extreme_points() const;

  // Accessors for the CLI/report layer.
  const Vec& ball_center() const { return a_; }
  double ball_radius() const { return radius_; }
  const Vec& box_lo() const { return a_; }
  const Vec& box_hi() const { return b_; }
  const Vec& seg_a() const { return a_; }
  const Vec& seg_b() const { return b_; }
  double interval_lo() const { return a_[0]; }
  double interval_hi() const { return b_[0]; }

 private:
  ConvexDomain(Kind kind, SpaceSpec space) : kind_(kind), space_(space) {}

  Kind kind_;
  SpaceSpec space_;
  Vec a_, b_;          // lo/hi, segment endpoints, or ball center in a_
  double radius_ = 0;  // ball only
};

}  // namespace sqckit
