#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sqckit/domain.hpp"
#include "sqckit/ext_real.hpp"
#include "sqckit/gauge.hpp"
#include "sqckit/map_descriptor.hpp"
#include "sqckit/space.hpp"

namespace sqckit {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Extended-real-valued function expression on R^n. Immutable after
/// construction; evaluation is pure and reentrant.
class Expr {
 public:
  virtual ~Expr() = default;

  virtual std::size_t input_dim() const = 0;
  virtual ExtReal eval(std::span<const double> x) const = 0;
  /// JSON tag, also the human-readable node name.
  virtual const char* kind() const = 0;

  /// Abscissae / points where the function has structure worth probing:
  /// overrides, breakpoints, kinks, quadratic vertices. In the node's own
  /// input space.
  virtual void collect_landmarks(std::vector<Vec>& /*out*/) const {}

  ExtReal eval1(double t) const { return eval(std::span<const double>(&t, 1)); }

  /// Certificate value declared on this node, if any (trusted, spot-checked).
  const std::optional<double>& declared_sigma() const { return declared_sigma_; }
  void set_declared_sigma(double sigma) {
    if (sigma < 0.0) fail(ErrorCode::InvalidConstant, "declared sigma must be nonnegative");
    declared_sigma_ = sigma;
  }

 protected:
  void check_dim(std::span<const double> x) const {
    if (x.size() != input_dim())
      fail(ErrorCode::DimensionMismatch, std::string("eval of '") + kind() + "' node");
  }

 private:
  std::optional<double> declared_sigma_;
};

// ---- atoms -----------------------------------------------------------------

class NormAtom final : public Expr {
 public:
  explicit NormAtom(SpaceSpec space) : space(space) {}
  const SpaceSpec space;

  std::size_t input_dim() const override { return space.dim(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "norm"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

/// ||x||^a with 0 < a < 1.
class PowerNormAtom final : public Expr {
 public:
  PowerNormAtom(SpaceSpec space, double exponent);
  const SpaceSpec space;
  const double exponent;

  std::size_t input_dim() const override { return space.dim(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "power_norm"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

class GaugeAtom final : public Expr {
 public:
  explicit GaugeAtom(GaugeBody body) : body(std::move(body)) {}
  const GaugeBody body;

  std::size_t input_dim() const override { return body.dim(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "gauge"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

/// Polynomial in one variable, coefficients in ascending degree order.
class Poly1D final : public Expr {
 public:
  explicit Poly1D(Vec coefficients);
  const Vec coefficients;

  std::size_t input_dim() const override { return 1; }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "poly1d"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

class Abs1D final : public Expr {
 public:
  std::size_t input_dim() const override { return 1; }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "abs1d"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

class Linear1D final : public Expr {
 public:
  explicit Linear1D(double slope = 1.0, double intercept = 0.0)
      : slope(slope), intercept(intercept) {}
  const double slope;
  const double intercept;

  std::size_t input_dim() const override { return 1; }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "linear1d"; }
};

/// Interval pieces separated by breakpoints, with exact-abscissa point
/// overrides that win over the covering piece. Override matching is exact
/// floating-point equality of the stored abscissa.
class Piecewise1D final : public Expr {
 public:
  Piecewise1D(Vec breakpoints, std::vector<ExprPtr> pieces,
              std::vector<std::pair<double, double>> overrides);
  const Vec breakpoints;
  const std::vector<ExprPtr> pieces;
  const std::vector<std::pair<double, double>> overrides;

  std::size_t input_dim() const override { return 1; }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "piecewise1d"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

/// t^2 away from the origin, -1 at the origin.
class QuadDip final : public Expr {
 public:
  std::size_t input_dim() const override { return 1; }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "quad_dip"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

/// Piecewise-linear interpolation of tabulated values; +inf outside the grid.
class Table1D final : public Expr {
 public:
  Table1D(Vec grid, Vec values);
  const Vec grid;
  const Vec values;

  std::size_t input_dim() const override { return 1; }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "table1d"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

// ---- combinators -----------------------------------------------------------

class Scale final : public Expr {
 public:
  Scale(double factor, ExprPtr child);
  const double factor;
  const ExprPtr child;

  std::size_t input_dim() const override { return child->input_dim(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "scale"; }
  void collect_landmarks(std::vector<Vec>& out) const override { child->collect_landmarks(out); }
};

/// outer(inner(x)) with outer one-dimensional and nondecreasing on the inner
/// range; ell is the declared lower-Lipschitz constant of the inner function.
class ComposeMonotone final : public Expr {
 public:
  ComposeMonotone(ExprPtr outer, ExprPtr inner, double ell);
  const ExprPtr outer;
  const ExprPtr inner;
  const double ell;

  std::size_t input_dim() const override { return inner->input_dim(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "compose_monotone"; }
  void collect_landmarks(std::vector<Vec>& out) const override { inner->collect_landmarks(out); }
};

/// Pointwise supremum of a finite family.
class SupFamily final : public Expr {
 public:
  explicit SupFamily(std::vector<ExprPtr> children);
  const std::vector<ExprPtr> children;

  std::size_t input_dim() const override { return children.front()->input_dim(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "sup"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

/// Pointwise maximum of finitely many functions.
class MaxFinite final : public Expr {
 public:
  explicit MaxFinite(std::vector<ExprPtr> children);
  const std::vector<ExprPtr> children;

  std::size_t input_dim() const override { return children.front()->input_dim(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "max"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

/// child(Ax + b). gamma, when declared, asserts ||x|| <= gamma * ||Ax||.
class AffinePre final : public Expr {
 public:
  AffinePre(Matrix a, Vec b, std::optional<double> gamma, ExprPtr child);
  const Matrix a;
  const Vec b;
  const std::optional<double> gamma;
  const ExprPtr child;

  std::size_t input_dim() const override { return a.cols(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "affine_pre"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

/// One-dimensional restriction of child to the segment [u, x]:
/// t -> child(u + t(x-u)) on [0,1], or the unit-speed parametrization
/// t -> child(u + t(x-u)/||x-u||) on [0, ||x-u||].
class Restrict final : public Expr {
 public:
  Restrict(ExprPtr child, Vec u, Vec x, SpaceSpec space, bool unit_speed);
  const ExprPtr child;
  const Vec u;
  const Vec x;
  const SpaceSpec space;
  const bool unit_speed;

  double endpoint_distance() const { return distance_; }
  std::size_t input_dim() const override { return 1; }
  ExtReal eval(std::span<const double> t) const override;
  const char* kind() const override { return "restrict"; }

 private:
  double distance_;
};

/// (left [] right)(x) = inf { left(t) + right(x - t) } over t in the declared
/// compact inner box (1-D or 2-D), solved by dense grid plus golden-section
/// refinement.
class InfConv final : public Expr {
 public:
  InfConv(ExprPtr left, ExprPtr right, Vec inner_lo, Vec inner_hi, int grid_n = 2049,
          std::optional<double> joint_sigma = std::nullopt, double inner_tol = 1e-6);
  const ExprPtr left;
  const ExprPtr right;
  const Vec inner_lo;
  const Vec inner_hi;
  const int grid_n;
  /// Declared sigma of (x1,x2) -> left(x1)+right(x2) under the sum norm.
  const std::optional<double> joint_sigma;
  /// Required bracket width (relative to the box width) after refinement.
  const double inner_tol;

  std::size_t input_dim() const override { return left->input_dim(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "inf_conv"; }
};

/// v(x) = inf { joint(x, y) : y in F(x) } for a convex map descriptor, or
/// mu(x) = inf over the affine preimage when the descriptor is AffinePreimage
/// (in which case `joint` takes the image-space variable only).
class MarginalMin final : public Expr {
 public:
  MarginalMin(ExprPtr joint, MapDescriptor map, double product_p = 2.0, int grid_n = 2049,
              std::optional<double> joint_sigma = std::nullopt);
  const ExprPtr joint;
  const MapDescriptor map;
  const double product_p;
  const int grid_n;
  const std::optional<double> joint_sigma;

  std::size_t input_dim() const override { return arg_dim_; }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "marginal_min"; }

 private:
  std::size_t arg_dim_;
};

/// V(x) = sup { joint(x, y) : y in F(x) } for an affine-process descriptor
/// with dom(F) covering every query point.
class SupValue final : public Expr {
 public:
  SupValue(ExprPtr joint, MapDescriptor map, double product_p = 2.0, int grid_n = 2049,
           std::optional<double> joint_sigma = std::nullopt);
  const ExprPtr joint;
  const MapDescriptor map;
  const double product_p;
  const int grid_n;
  const std::optional<double> joint_sigma;

  std::size_t input_dim() const override { return arg_dim_; }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "sup_value"; }

 private:
  std::size_t arg_dim_;
};

/// child(x + offset).
class Shift final : public Expr {
 public:
  Shift(Vec offset, ExprPtr child);
  const Vec offset;
  const ExprPtr child;

  std::size_t input_dim() const override { return child->input_dim(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "shift"; }
  void collect_landmarks(std::vector<Vec>& out) const override;
};

class AddConstant final : public Expr {
 public:
  AddConstant(double constant, ExprPtr child);
  const double constant;
  const ExprPtr child;

  std::size_t input_dim() const override { return child->input_dim(); }
  ExtReal eval(std::span<const double> x) const override;
  const char* kind() const override { return "add_constant"; }
  void collect_landmarks(std::vector<Vec>& out) const override { child->collect_landmarks(out); }
};

// ---- helpers ---------------------------------------------------------------

/// Landmarks of f inside the domain, plus the domain's own extreme points and
/// center. Deduplicated; the probe set for falsifier prefixes and minimizer
/// starts.
std::vector<Vec> probe_points(const Expr& f, const ConvexDomain& domain);

}  // namespace sqckit
