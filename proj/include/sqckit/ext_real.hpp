#pragma once

#include <cmath>
#include <limits>

#include "sqckit/errors.hpp"

namespace sqckit {

/// Extended real value in R ∪ {+∞}. Negative infinity is not representable:
/// constructing one (or a NaN) throws. Ordering and addition follow the
/// usual conventions, with finite + anything-infinite = +∞.
class ExtReal {
 public:
  ExtReal() : v_(0.0) {}

  ExtReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
      fail(ErrorCode::InvalidConstant, "extended real must be finite or +inf");
  }

  static ExtReal infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_infinite() const { return !std::isfinite(v_); }

  /// Raw double; +inf when infinite.
  double value() const { return v_; }

  friend ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal(a.v_ + b.v_); }
  friend ExtReal operator*(double c, ExtReal a) {
    if (a.is_infinite()) return infinity();
    return ExtReal(c * a.v_);
  }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

  friend ExtReal max(ExtReal a, ExtReal b) { return a.v_ >= b.v_ ? a : b; }

 private:
  double v_;
};

}  // namespace sqckit
