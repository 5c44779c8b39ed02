#include "sqckit/domain.hpp"

#include <algorithm>
#include <cmath>

namespace sqckit {

ConvexDomain ConvexDomain::ball(Vec center, double radius, SpaceSpec space) {
  if (center.size() != space.dim()) fail(ErrorCode::DimensionMismatch, "ball center dimension");
  if (!(radius > 0.0) || !std::isfinite(radius))
    fail(ErrorCode::NonpositiveRadius, "ball radius must be positive and finite");
  ConvexDomain d(Kind::Ball, space);
  d.a_ = std::move(center);
  d.radius_ = radius;
  return d;
}

ConvexDomain ConvexDomain::box(Vec lo, Vec hi, SpaceSpec space) {
  if (lo.size() != space.dim() || hi.size() != space.dim())
    fail(ErrorCode::DimensionMismatch, "box corner dimension");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) fail(ErrorCode::LoAboveHi, "box lower corner exceeds upper corner");
  ConvexDomain d(Kind::Box, space);
  d.a_ = std::move(lo);
  d.b_ = std::move(hi);
  return d;
}

ConvexDomain ConvexDomain::segment(Vec a, Vec b, SpaceSpec space) {
  if (a.size() != space.dim() || b.size() != space.dim())
    fail(ErrorCode::DimensionMismatch, "segment endpoint dimension");
  ConvexDomain d(Kind::Segment, space);
  d.a_ = std::move(a);
  d.b_ = std::move(b);
  return d;
}

ConvexDomain ConvexDomain::interval(double lo, double hi, double p) {
  if (lo > hi) fail(ErrorCode::LoAboveHi, "interval lower bound exceeds upper bound");
  ConvexDomain d(Kind::Interval, SpaceSpec(1, p));
  d.a_ = {lo};
  d.b_ = {hi};
  return d;
}

bool ConvexDomain::contains(std::span<const double> x, double tol) const {
  if (x.size() != dim()) return false;
  switch (kind_) {
    case Kind::Ball:
      return space_.distance(x, a_) <= radius_ + tol;
    case Kind::Box:
    case Kind::Interval: {
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < a_[i] - tol || x[i] > b_[i] + tol) return false;
      return true;
    }
    case Kind::Segment: {
      Vec dir = sub(b_, a_);
      double len2 = dot(dir, dir);
      Vec rel = sub(x, a_);
      if (len2 <= 0.0) return space_.norm(rel) <= tol;
      double t = dot(rel, dir) / len2;
      if (t < -tol || t > 1.0 + tol) return false;
      Vec on = add(a_, scaled(dir, std::clamp(t, 0.0, 1.0)));
      return space_.distance(x, on) <= tol * (1.0 + space_.norm(x));
    }
  }
  return false;
}

Vec ConvexDomain::center() const {
  switch (kind_) {
    case Kind::Ball:
      return a_;
    default:
      return combine(a_, b_, 0.5);
  }
}

double ConvexDomain::diameter() const {
  switch (kind_) {
    case Kind::Ball:
      return 2.0 * radius_;
    case Kind::Box:
    case Kind::Interval:
      return space_.distance(a_, b_);
    case Kind::Segment:
      return space_.distance(a_, b_);
  }
  return 0.0;
}

Vec ConvexDomain::project(std::span<const double> x) const {
  switch (kind_) {
    case Kind::Ball: {
      double d = space_.distance(x, a_);
      if (d <= radius_) return Vec(x.begin(), x.end());
      Vec rel = sub(x, a_);
      return add(a_, scaled(rel, radius_ / d));
    }
    case Kind::Box:
    case Kind::Interval: {
      Vec r(x.begin(), x.end());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::clamp(r[i], a_[i], b_[i]);
      return r;
    }
    case Kind::Segment: {
      Vec dir = sub(b_, a_);
      double len2 = dot(dir, dir);
      if (len2 <= 0.0) return a_;
      double t = std::clamp(dot(sub(x, a_), dir) / len2, 0.0, 1.0);
      return add(a_, scaled(dir, t));
    }
  }
  return Vec(x.begin(), x.end());
}

Vec ConvexDomain::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::Ball: {
      std::size_t n = dim();
      if (space_.is_inner_product()) {
        Vec v = rng.normal_vector(n);
        double nn = space_.norm(v);
        if (nn <= 1e-300) return a_;
        double r = radius_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
        return add(a_, scaled(v, r / nn));
      }
      // Non-Euclidean ball: rejection from the circumscribing box, with a
      // scaled-direction fallback when rejection keeps missing.
      for (int tries = 0; tries < 64; ++tries) {
        Vec v(n);
        for (auto& vi : v) vi = rng.uniform(-radius_, radius_);
        if (space_.norm(v) <= radius_) return add(a_, v);
      }
      Vec v = rng.normal_vector(n);
      double nn = space_.norm(v);
      if (nn <= 1e-300) return a_;
      double r = radius_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
      return add(a_, scaled(v, r / nn));
    }
    case Kind::Box:
    case Kind::Interval: {
      Vec r(dim());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = rng.uniform(a_[i], b_[i]);
      return r;
    }
    case Kind::Segment:
      return combine(b_, a_, rng.uniform());
  }
  return a_;
}

Vec ConvexDomain::sample_boundary(Rng& rng) const {
  switch (kind_) {
    case Kind::Ball: {
      Vec v = rng.normal_vector(dim());
      double nn = space_.norm(v);
      if (nn <= 1e-300) {
        Vec e(dim(), 0.0);
        e[0] = 1.0;
        return add(a_, scaled(e, radius_));
      }
      return add(a_, scaled(v, radius_ / nn));
    }
    case Kind::Box:
    case Kind::Interval: {
      Vec r = sample(rng);
      std::size_t axis = rng.index(dim());
      r[axis] = rng.uniform() < 0.5 ? a_[axis] : b_[axis];
      return r;
    }
    case Kind::Segment:
      return rng.uniform() < 0.5 ? a_ : b_;
  }
  return a_;
}

std::vector<Vec> ConvexDomain::extreme_points() const {
  std::vector<Vec> pts;
  switch (kind_) {
    case Kind::Ball: {
      pts.push_back(a_);
      for (std::size_t i = 0; i < dim(); ++i) {
        Vec lo = a_, hi = a_;
        lo[i] -= radius_;
        hi[i] += radius_;
        pts.push_back(lo);
        pts.push_back(hi);
      }
      break;
    }
    case Kind::Box:
    case Kind::Interval: {
      std::size_t n = dim();
      if (n <= 6) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
          Vec c(n);
          for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> i) & 1 ? b_[i] : a_[i];
          pts.push_back(std::move(c));
        }
      } else {
        pts.push_back(a_);
        pts.push_back(b_);
        pts.push_back(center());
      }
      break;
    }
    case Kind::Segment:
      pts.push_back(a_);
      pts.push_back(b_);
      break;
  }
  return pts;
}

}  // namespace sqckit
