#include "sqckit/gauge.hpp"

#include <algorithm>
#include <cmath>

namespace sqckit {

GaugeBody GaugeBody::pnorm_ball(SpaceSpec space, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    fail(ErrorCode::NonpositiveRadius, "gauge ball radius must be positive");
  GaugeBody b(Kind::PNormBall);
  b.dim_ = space.dim();
  b.space_ = space;
  b.radius_ = radius;
  return b;
}

GaugeBody GaugeBody::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size() || lo.empty())
    fail(ErrorCode::DimensionMismatch, "gauge box corners");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) fail(ErrorCode::LoAboveHi, "gauge box lower corner exceeds upper");
    if (!(lo[i] < 0.0 && hi[i] > 0.0))
      fail(ErrorCode::OriginNotInterior, "gauge box must contain 0 strictly inside");
  }
  GaugeBody b(Kind::Box);
  b.dim_ = lo.size();
  b.lo_ = std::move(lo);
  b.hi_ = std::move(hi);
  return b;
}

GaugeBody GaugeBody::polytope(std::vector<Vec> rows, Vec offsets) {
  if (rows.empty() || rows.size() != offsets.size())
    fail(ErrorCode::DimensionMismatch, "polytope rows/offsets mismatch");
  std::size_t n = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != n) fail(ErrorCode::DimensionMismatch, "polytope row dimensions differ");
  for (double b : offsets)
    if (!(b > 0.0)) fail(ErrorCode::OriginNotInterior, "polytope offsets must be positive");
  GaugeBody b(Kind::Polytope);
  b.dim_ = n;
  b.rows_ = std::move(rows);
  b.offsets_ = std::move(offsets);
  return b;
}

GaugeBody GaugeBody::ellipsoid(Matrix q) {
  if (!q.is_square()) fail(ErrorCode::DimensionMismatch, "ellipsoid form must be square");
  // Positive definiteness spot check on the coordinate axes and a few blends.
  std::size_t n = q.rows();
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    if (dot(e, q.apply(e)) <= 0.0)
      fail(ErrorCode::OriginNotInterior, "ellipsoid form not positive definite");
  }
  Rng rng(12345);
  for (int k = 0; k < 32; ++k) {
    Vec v = rng.normal_vector(n);
    if (dot(v, q.apply(v)) <= 0.0)
      fail(ErrorCode::OriginNotInterior, "ellipsoid form not positive definite");
  }
  GaugeBody b(Kind::Ellipsoid);
  b.dim_ = n;
  b.q_ = std::move(q);
  return b;
}

double GaugeBody::gauge(std::span<const double> x) const {
  if (x.size() != dim_) fail(ErrorCode::DimensionMismatch, "gauge argument dimension");
  switch (kind_) {
    case Kind::PNormBall:
      return space_->norm(x) / radius_;
    case Kind::Box: {
      double g = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] > 0.0)
          g = std::max(g, x[i] / hi_[i]);
        else if (x[i] < 0.0)
          g = std::max(g, x[i] / lo_[i]);
      }
      return g;
    }
    case Kind::Polytope: {
      double g = 0.0;
      for (std::size_t i = 0; i < rows_.size(); ++i)
        g = std::max(g, dot(rows_[i], x) / offsets_[i]);
      return std::max(g, 0.0);
    }
    case Kind::Ellipsoid:
      return std::sqrt(std::max(0.0, dot(x, q_.apply(x))));
  }
  return 0.0;
}

Vec GaugeBody::boundary_point(std::span<const double> v) const {
  double g = gauge(v);
  if (g <= 0.0) fail(ErrorCode::DegenerateSamples, "no boundary point along a null direction");
  return scaled(v, 1.0 / g);
}

}  // namespace sqckit
