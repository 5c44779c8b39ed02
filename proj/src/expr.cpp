#include "sqckit/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace sqckit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498948482;

// Dense grid scan of a 1-D objective followed by golden-section refinement of
// the bracket around the best grid point. Deterministic; ties go to the
// smaller index. Returns +inf if the objective is +inf everywhere.
struct ScanResult {
  double value = kInf;
  double arg = 0.0;
  bool decreasing_into_boundary = false;
  double bracket = 0.0;  // final refinement bracket width
};

ScanResult scan_and_refine_1d(const std::function<double(double)>& obj, double lo, double hi,
                              int grid_n, int golden_steps = 40) {
  if (grid_n < 3) grid_n = 3;
  const double h = (hi - lo) / static_cast<double>(grid_n - 1);
  double best = kInf, prev = kInf, next_after_best = kInf, before_best = kInf;
  int best_i = 0;
  for (int i = 0; i < grid_n; ++i) {
    double t = (i == grid_n - 1) ? hi : lo + h * i;
    double v = obj(t);
    if (v < best) {
      best = v;
      best_i = i;
      before_best = prev;
      next_after_best = kInf;
    } else if (i == best_i + 1) {
      next_after_best = v;
    }
    prev = v;
  }
  ScanResult r;
  if (!std::isfinite(best)) {
    r.value = best;
    return r;
  }

  r.decreasing_into_boundary = (best_i == 0 && next_after_best > best) ||
                               (best_i == grid_n - 1 && before_best > best);

  double a = std::max(lo, lo + h * (best_i - 1));
  double b = std::min(hi, lo + h * (best_i + 1));
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = obj(x1), f2 = obj(x2);
  for (int it = 0; it < golden_steps; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = obj(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = obj(x2);
    }
  }
  r.value = best;
  r.arg = lo + h * best_i;
  r.bracket = b - a;
  for (auto [t, v] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (v < r.value) {
      r.value = v;
      r.arg = t;
    }
  }
  return r;
}

// 2-D inner search: dense grid scan, then alternating per-axis golden-section
// sweeps around the incumbent.
ScanResult scan_and_refine_2d(const std::function<double(double, double)>& obj, const Vec& lo,
                              const Vec& hi, int grid_n, int golden_steps = 40) {
  if (grid_n < 3) grid_n = 3;
  const double hx = (hi[0] - lo[0]) / static_cast<double>(grid_n - 1);
  const double hy = (hi[1] - lo[1]) / static_cast<double>(grid_n - 1);
  ScanResult r;
  double bx = lo[0], by = lo[1];
  int bi = 0, bj = 0;
  for (int i = 0; i < grid_n; ++i) {
    double x = (i == grid_n - 1) ? hi[0] : lo[0] + hx * i;
    for (int j = 0; j < grid_n; ++j) {
      double y = (j == grid_n - 1) ? hi[1] : lo[1] + hy * j;
      double v = obj(x, y);
      if (v < r.value) {
        r.value = v;
        bx = x;
        by = y;
        bi = i;
        bj = j;
      }
    }
  }
  if (!std::isfinite(r.value)) return r;
  if (bi == 0 || bi == grid_n - 1 || bj == 0 || bj == grid_n - 1) {
    double ix = bx + (bi == 0 ? hx : bi == grid_n - 1 ? -hx : 0.0);
    double iy = by + (bj == 0 ? hy : bj == grid_n - 1 ? -hy : 0.0);
    r.decreasing_into_boundary = obj(ix, iy) > r.value;
  }

  for (int sweep = 0; sweep < golden_steps / 2; ++sweep) {
    auto along_x = [&](double t) { return obj(t, by); };
    ScanResult sx = scan_and_refine_1d(along_x, std::max(lo[0], bx - hx),
                                       std::min(hi[0], bx + hx), 9, 2);
    if (sx.value < r.value) {
      r.value = sx.value;
      bx = sx.arg;
    }
    auto along_y = [&](double t) { return obj(bx, t); };
    ScanResult sy = scan_and_refine_1d(along_y, std::max(lo[1], by - hy),
                                       std::min(hi[1], by + hy), 9, 2);
    if (sy.value < r.value) {
      r.value = sy.value;
      by = sy.arg;
    }
  }
  r.arg = bx;  // callers that need both coordinates use the obj closure state
  return r;
}

double quadratic_vertex(const Vec& coeffs) {
  // coefficients ascending; degree must be exactly 2
  return -coeffs[1] / (2.0 * coeffs[2]);
}

}  // namespace

// ---- atoms -----------------------------------------------------------------

ExtReal NormAtom::eval(std::span<const double> x) const {
  check_dim(x);
  return space.norm(x);
}

void NormAtom::collect_landmarks(std::vector<Vec>& out) const {
  out.push_back(Vec(space.dim(), 0.0));
}

PowerNormAtom::PowerNormAtom(SpaceSpec space, double exponent)
    : space(space), exponent(exponent) {
  if (!(exponent > 0.0) || !(exponent < 1.0))
    fail(ErrorCode::InvalidConstant, "power-norm exponent must lie in (0, 1)");
}

ExtReal PowerNormAtom::eval(std::span<const double> x) const {
  check_dim(x);
  return std::pow(space.norm(x), exponent);
}

void PowerNormAtom::collect_landmarks(std::vector<Vec>& out) const {
  out.push_back(Vec(space.dim(), 0.0));
}

ExtReal GaugeAtom::eval(std::span<const double> x) const {
  check_dim(x);
  return body.gauge(x);
}

void GaugeAtom::collect_landmarks(std::vector<Vec>& out) const {
  out.push_back(Vec(body.dim(), 0.0));
}

Poly1D::Poly1D(Vec coefficients) : coefficients(std::move(coefficients)) {
  if (this->coefficients.empty())
    fail(ErrorCode::InvalidConstant, "polynomial needs at least one coefficient");
}

ExtReal Poly1D::eval(std::span<const double> x) const {
  check_dim(x);
  double t = x[0];
  double v = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 0;) v = v * t + coefficients[i];
  return v;
}

void Poly1D::collect_landmarks(std::vector<Vec>& out) const {
  if (coefficients.size() == 3 && coefficients[2] != 0.0)
    out.push_back({quadratic_vertex(coefficients)});
}

ExtReal Abs1D::eval(std::span<const double> x) const {
  check_dim(x);
  return std::abs(x[0]);
}

void Abs1D::collect_landmarks(std::vector<Vec>& out) const { out.push_back({0.0}); }

ExtReal Linear1D::eval(std::span<const double> x) const {
  check_dim(x);
  return slope * x[0] + intercept;
}

Piecewise1D::Piecewise1D(Vec breakpoints, std::vector<ExprPtr> pieces,
                         std::vector<std::pair<double, double>> overrides)
    : breakpoints(std::move(breakpoints)),
      pieces(std::move(pieces)),
      overrides(std::move(overrides)) {
  if (this->pieces.size() != this->breakpoints.size() + 1)
    fail(ErrorCode::InvalidConstant, "piecewise needs breakpoints+1 pieces");
  if (!std::is_sorted(this->breakpoints.begin(), this->breakpoints.end()))
    fail(ErrorCode::InvalidConstant, "piecewise breakpoints must be sorted");
  for (const auto& p : this->pieces) {
    if (!p) fail(ErrorCode::InvalidConstant, "piecewise has a null piece");
    if (p->input_dim() != 1) fail(ErrorCode::DimensionMismatch, "piecewise pieces must be 1-D");
  }
}

ExtReal Piecewise1D::eval(std::span<const double> x) const {
  check_dim(x);
  double t = x[0];
  for (const auto& [at, value] : overrides)
    if (t == at) return value;
  std::size_t idx =
      std::upper_bound(breakpoints.begin(), breakpoints.end(), t) - breakpoints.begin();
  return pieces[idx]->eval(x);
}

void Piecewise1D::collect_landmarks(std::vector<Vec>& out) const {
  for (double b : breakpoints) out.push_back({b});
  for (const auto& [at, value] : overrides) out.push_back({at});
  for (const auto& p : pieces) p->collect_landmarks(out);
}

ExtReal QuadDip::eval(std::span<const double> x) const {
  check_dim(x);
  double t = x[0];
  return t == 0.0 ? -1.0 : t * t;
}

void QuadDip::collect_landmarks(std::vector<Vec>& out) const { out.push_back({0.0}); }

Table1D::Table1D(Vec grid, Vec values) : grid(std::move(grid)), values(std::move(values)) {
  if (this->grid.size() < 2 || this->grid.size() != this->values.size())
    fail(ErrorCode::InvalidConstant, "table needs matching grid/value arrays of length >= 2");
  for (std::size_t i = 1; i < this->grid.size(); ++i)
    if (!(this->grid[i - 1] < this->grid[i]))
      fail(ErrorCode::InvalidConstant, "table grid must be strictly increasing");
}

ExtReal Table1D::eval(std::span<const double> x) const {
  check_dim(x);
  double t = x[0];
  if (t < grid.front() || t > grid.back()) return ExtReal::infinity();
  auto it = std::lower_bound(grid.begin(), grid.end(), t);
  std::size_t i = it - grid.begin();
  if (grid[i] == t) return values[i];
  double w = (t - grid[i - 1]) / (grid[i] - grid[i - 1]);
  return (1.0 - w) * values[i - 1] + w * values[i];
}

void Table1D::collect_landmarks(std::vector<Vec>& out) const {
  out.push_back({grid.front()});
  out.push_back({grid.back()});
  std::size_t arg = std::min_element(values.begin(), values.end()) - values.begin();
  out.push_back({grid[arg]});
}

// ---- combinators -----------------------------------------------------------

Scale::Scale(double factor, ExprPtr child) : factor(factor), child(std::move(child)) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    fail(ErrorCode::InvalidConstant, "scale factor must be positive and finite");
  if (!this->child) fail(ErrorCode::InvalidConstant, "scale has a null child");
}

ExtReal Scale::eval(std::span<const double> x) const { return factor * child->eval(x); }

ComposeMonotone::ComposeMonotone(ExprPtr outer, ExprPtr inner, double ell)
    : outer(std::move(outer)), inner(std::move(inner)), ell(ell) {
  if (!this->outer || !this->inner) fail(ErrorCode::InvalidConstant, "compose has a null child");
  if (this->outer->input_dim() != 1)
    fail(ErrorCode::DimensionMismatch, "compose outer function must be 1-D");
  if (ell < 0.0) fail(ErrorCode::InvalidConstant, "lower-Lipschitz constant must be >= 0");
}

ExtReal ComposeMonotone::eval(std::span<const double> x) const {
  ExtReal v = inner->eval(x);
  if (v.is_infinite()) return ExtReal::infinity();  // nondecreasing outer
  return outer->eval1(v.value());
}

SupFamily::SupFamily(std::vector<ExprPtr> children) : children(std::move(children)) {
  if (this->children.empty()) fail(ErrorCode::EmptyFamily, "sup of an empty family");
  for (const auto& c : this->children) {
    if (!c) fail(ErrorCode::InvalidConstant, "sup has a null child");
    if (c->input_dim() != this->children.front()->input_dim())
      fail(ErrorCode::DimensionMismatch, "sup children disagree on input dimension");
  }
}

ExtReal SupFamily::eval(std::span<const double> x) const {
  ExtReal v = children.front()->eval(x);
  for (std::size_t i = 1; i < children.size(); ++i) v = max(v, children[i]->eval(x));
  return v;
}

void SupFamily::collect_landmarks(std::vector<Vec>& out) const {
  for (const auto& c : children) c->collect_landmarks(out);
}

MaxFinite::MaxFinite(std::vector<ExprPtr> children) : children(std::move(children)) {
  if (this->children.empty()) fail(ErrorCode::EmptyFamily, "max of an empty family");
  for (const auto& c : this->children) {
    if (!c) fail(ErrorCode::InvalidConstant, "max has a null child");
    if (c->input_dim() != this->children.front()->input_dim())
      fail(ErrorCode::DimensionMismatch, "max children disagree on input dimension");
  }
}

ExtReal MaxFinite::eval(std::span<const double> x) const {
  ExtReal v = children.front()->eval(x);
  for (std::size_t i = 1; i < children.size(); ++i) v = max(v, children[i]->eval(x));
  return v;
}

void MaxFinite::collect_landmarks(std::vector<Vec>& out) const {
  for (const auto& c : children) c->collect_landmarks(out);
}

AffinePre::AffinePre(Matrix a, Vec b, std::optional<double> gamma, ExprPtr child)
    : a(std::move(a)), b(std::move(b)), gamma(gamma), child(std::move(child)) {
  if (!this->child) fail(ErrorCode::InvalidConstant, "affine_pre has a null child");
  if (this->a.rows() != this->b.size())
    fail(ErrorCode::DimensionMismatch, "affine_pre offset length != matrix rows");
  if (this->a.rows() != this->child->input_dim())
    fail(ErrorCode::DimensionMismatch, "affine_pre child dimension != matrix rows");
  if (gamma && !(*gamma > 0.0)) fail(ErrorCode::NonpositiveGamma, "gamma must be positive");
}

ExtReal AffinePre::eval(std::span<const double> x) const {
  check_dim(x);
  Vec y = add(a.apply(x), b);
  return child->eval(y);
}

void AffinePre::collect_landmarks(std::vector<Vec>& out) const {
  if (!a.is_square()) return;
  std::vector<Vec> inner;
  child->collect_landmarks(inner);
  for (const auto& l : inner) {
    try {
      out.push_back(a.solve(sub(l, b)));
    } catch (const Error&) {
      return;  // singular; no pullback
    }
  }
}

Restrict::Restrict(ExprPtr child, Vec u, Vec x, SpaceSpec space, bool unit_speed)
    : child(std::move(child)), u(std::move(u)), x(std::move(x)), space(space),
      unit_speed(unit_speed) {
  if (!this->child) fail(ErrorCode::InvalidConstant, "restrict has a null child");
  if (this->u.size() != space.dim() || this->x.size() != space.dim() ||
      this->child->input_dim() != space.dim())
    fail(ErrorCode::DimensionMismatch, "restrict endpoint dimensions");
  distance_ = space.distance(this->x, this->u);
  if (distance_ <= 0.0)
    fail(ErrorCode::CoincidentEndpoints, "restriction endpoints must differ");
}

ExtReal Restrict::eval(std::span<const double> t) const {
  check_dim(t);
  double s = unit_speed ? t[0] / distance_ : t[0];
  Vec p = add(u, scaled(sub(x, u), s));
  return child->eval(p);
}

InfConv::InfConv(ExprPtr left, ExprPtr right, Vec inner_lo, Vec inner_hi, int grid_n,
                 std::optional<double> joint_sigma, double inner_tol)
    : left(std::move(left)),
      right(std::move(right)),
      inner_lo(std::move(inner_lo)),
      inner_hi(std::move(inner_hi)),
      grid_n(grid_n),
      joint_sigma(joint_sigma),
      inner_tol(inner_tol) {
  if (!(inner_tol > 0.0)) fail(ErrorCode::InvalidConstant, "inner tolerance must be positive");
  if (!this->left || !this->right) fail(ErrorCode::InvalidConstant, "inf_conv has a null child");
  std::size_t n = this->left->input_dim();
  if (this->right->input_dim() != n)
    fail(ErrorCode::DimensionMismatch, "inf_conv children disagree on dimension");
  if (n > 2)
    fail(ErrorCode::DimensionMismatch, "inf_conv inner search supports 1-D and 2-D only");
  if (this->inner_lo.size() != n || this->inner_hi.size() != n)
    fail(ErrorCode::DimensionMismatch, "inf_conv inner box dimension");
  for (std::size_t i = 0; i < n; ++i)
    if (this->inner_lo[i] > this->inner_hi[i])
      fail(ErrorCode::LoAboveHi, "inf_conv inner box is empty");
  if (grid_n < 3) fail(ErrorCode::InvalidConstant, "inf_conv grid too small");
  if (joint_sigma && *joint_sigma < 0.0)
    fail(ErrorCode::InvalidConstant, "joint sigma must be nonnegative");
}

ExtReal InfConv::eval(std::span<const double> x) const {
  check_dim(x);
  if (input_dim() == 1) {
    auto obj = [&](double t) {
      double xt = x[0] - t;
      return (left->eval1(t) + right->eval1(xt)).value();
    };
    ScanResult r = scan_and_refine_1d(obj, inner_lo[0], inner_hi[0], grid_n);
    if (!std::isfinite(r.value)) return ExtReal::infinity();
    if (r.decreasing_into_boundary)
      fail(ErrorCode::UnboundedBelowDetected,
           "infimal convolution inner search still decreasing at the inner-box boundary");
    if (r.bracket > inner_tol * (inner_hi[0] - inner_lo[0]))
      fail(ErrorCode::InnerSearchBudgetExceeded,
           "inner refinement did not reach the declared tolerance");
    return r.value;
  }
  auto obj = [&](double t0, double t1) {
    Vec t = {t0, t1};
    Vec xt = {x[0] - t0, x[1] - t1};
    return (left->eval(t) + right->eval(xt)).value();
  };
  ScanResult r = scan_and_refine_2d(obj, inner_lo, inner_hi, grid_n);
  if (!std::isfinite(r.value)) return ExtReal::infinity();
  if (r.decreasing_into_boundary)
    fail(ErrorCode::UnboundedBelowDetected,
         "infimal convolution inner search reached the inner-box boundary");
  return r.value;
}

static std::size_t marginal_arg_dim(const Expr& joint, const MapDescriptor& map) {
  switch (map.kind) {
    case MapDescriptor::Kind::AffineGraph:
      return map.a.cols();
    case MapDescriptor::Kind::AffinePreimage:
      return map.a.rows();
    case MapDescriptor::Kind::ProductSlice: {
      std::size_t y = map.slice_lo.size();
      if (joint.input_dim() <= y)
        fail(ErrorCode::DimensionMismatch, "joint function dimension must exceed slice dimension");
      return joint.input_dim() - y;
    }
    case MapDescriptor::Kind::SumSplit:
      fail(ErrorCode::InvalidConstant,
           "sum-split maps are handled by the inf_conv combinator, not value functions");
  }
  return 0;
}

static void check_value_function_wiring(const Expr& joint, const MapDescriptor& map) {
  switch (map.kind) {
    case MapDescriptor::Kind::AffineGraph:
      if (joint.input_dim() != map.a.cols() + map.a.rows())
        fail(ErrorCode::DimensionMismatch, "joint dimension != argument + image dims");
      break;
    case MapDescriptor::Kind::AffinePreimage:
      if (joint.input_dim() != map.a.cols())
        fail(ErrorCode::DimensionMismatch,
             "preimage value functions take the image-space function directly");
      break;
    case MapDescriptor::Kind::ProductSlice: {
      if (map.slice_lo.size() > 2)
        fail(ErrorCode::DimensionMismatch, "inner search supports 1-D and 2-D slices only");
      if (map.anchored && joint.input_dim() != 2 * map.slice_lo.size())
        fail(ErrorCode::DimensionMismatch, "anchored slice needs matching block dimensions");
      break;
    }
    case MapDescriptor::Kind::SumSplit:
      fail(ErrorCode::InvalidConstant, "sum-split maps belong to inf_conv");
  }
}

// Shared inner search for the two value-function combinators.
static ExtReal value_function_eval(const Expr& joint, const MapDescriptor& map, int grid_n,
                                   std::span<const double> x, bool maximize) {
  switch (map.kind) {
    case MapDescriptor::Kind::AffineGraph: {
      Vec y = add(map.a.apply(x), map.b);
      Vec xy(x.begin(), x.end());
      xy.insert(xy.end(), y.begin(), y.end());
      return joint.eval(xy);
    }
    case MapDescriptor::Kind::AffinePreimage: {
      Vec y = map.a.solve(sub(x, map.b));
      return joint.eval(y);
    }
    case MapDescriptor::Kind::ProductSlice: {
      Vec lo = map.slice_lo, hi = map.slice_hi;
      if (map.anchored) {
        for (std::size_t i = 0; i < lo.size(); ++i) {
          lo[i] += x[i];
          hi[i] += x[i];
        }
      }
      double sign = maximize ? -1.0 : 1.0;
      if (lo.size() == 1) {
        auto obj = [&](double t) {
          Vec xy(x.begin(), x.end());
          xy.push_back(t);
          return sign * joint.eval(xy).value();
        };
        ScanResult r = scan_and_refine_1d(obj, lo[0], hi[0], grid_n);
        if (!std::isfinite(r.value)) return ExtReal::infinity();
        return sign * r.value;
      }
      auto obj = [&](double t0, double t1) {
        Vec xy(x.begin(), x.end());
        xy.push_back(t0);
        xy.push_back(t1);
        return sign * joint.eval(xy).value();
      };
      ScanResult r = scan_and_refine_2d(obj, lo, hi, grid_n);
      if (!std::isfinite(r.value)) return ExtReal::infinity();
      return sign * r.value;
    }
    case MapDescriptor::Kind::SumSplit:
      break;
  }
  fail(ErrorCode::InvalidConstant, "unsupported map descriptor in value function");
}

MarginalMin::MarginalMin(ExprPtr joint, MapDescriptor map, double product_p, int grid_n,
                         std::optional<double> joint_sigma)
    : joint(std::move(joint)),
      map(std::move(map)),
      product_p(product_p),
      grid_n(grid_n),
      joint_sigma(joint_sigma) {
  if (!this->joint) fail(ErrorCode::InvalidConstant, "marginal_min has a null joint function");
  check_value_function_wiring(*this->joint, this->map);
  arg_dim_ = marginal_arg_dim(*this->joint, this->map);
}

ExtReal MarginalMin::eval(std::span<const double> x) const {
  check_dim(x);
  return value_function_eval(*joint, map, grid_n, x, /*maximize=*/false);
}

SupValue::SupValue(ExprPtr joint, MapDescriptor map, double product_p, int grid_n,
                   std::optional<double> joint_sigma)
    : joint(std::move(joint)),
      map(std::move(map)),
      product_p(product_p),
      grid_n(grid_n),
      joint_sigma(joint_sigma) {
  if (!this->joint) fail(ErrorCode::InvalidConstant, "sup_value has a null joint function");
  check_value_function_wiring(*this->joint, this->map);
  arg_dim_ = marginal_arg_dim(*this->joint, this->map);
}

ExtReal SupValue::eval(std::span<const double> x) const {
  check_dim(x);
  ExtReal v = value_function_eval(*joint, map, grid_n, x, /*maximize=*/true);
  return v;
}

Shift::Shift(Vec offset, ExprPtr child) : offset(std::move(offset)), child(std::move(child)) {
  if (!this->child) fail(ErrorCode::InvalidConstant, "shift has a null child");
  if (this->offset.size() != this->child->input_dim())
    fail(ErrorCode::DimensionMismatch, "shift offset dimension");
}

ExtReal Shift::eval(std::span<const double> x) const {
  check_dim(x);
  return child->eval(add(x, offset));
}

void Shift::collect_landmarks(std::vector<Vec>& out) const {
  std::vector<Vec> inner;
  child->collect_landmarks(inner);
  for (const auto& l : inner) out.push_back(sub(l, offset));
}

AddConstant::AddConstant(double constant, ExprPtr child)
    : constant(constant), child(std::move(child)) {
  if (!std::isfinite(constant)) fail(ErrorCode::InvalidConstant, "added constant must be finite");
  if (!this->child) fail(ErrorCode::InvalidConstant, "add_constant has a null child");
}

ExtReal AddConstant::eval(std::span<const double> x) const {
  return child->eval(x) + ExtReal(constant);
}

// ---- helpers ---------------------------------------------------------------

std::vector<Vec> probe_points(const Expr& f, const ConvexDomain& domain) {
  std::vector<Vec> raw;
  f.collect_landmarks(raw);
  std::vector<Vec> pts = domain.extreme_points();
  pts.push_back(domain.center());
  for (auto& l : raw)
    if (l.size() == domain.dim() && domain.contains(l)) pts.push_back(std::move(l));

  std::vector<Vec> unique;
  for (auto& p : pts) {
    bool dup = false;
    for (const auto& q : unique)
      if (q == p) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(std::move(p));
    if (unique.size() >= 24) break;  // cap the probe set
  }
  return unique;
}

}  // namespace sqckit
