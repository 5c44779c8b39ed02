#include "sqckit/calculus.hpp"

#include <algorithm>
#include <cmath>

#include <functional>

#include "sqckit/certify.hpp"

namespace sqckit {

double rule_scale(double sigma, double c) {
  if (sigma < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  if (!(c > 0.0)) fail(ErrorCode::NonpositiveScalar, "scalar rule needs c > 0");
  return c * sigma;
}

double rule_compose(double sigma_phi, double ell) {
  if (sigma_phi < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  if (ell < 0.0) fail(ErrorCode::NegativeConstant, "lower-Lipschitz constant must be >= 0");
  return sigma_phi * ell * ell;
}

double rule_sup(const std::vector<double>& sigmas) {
  if (sigmas.empty()) fail(ErrorCode::EmptyFamily, "sup rule over an empty family");
  return *std::min_element(sigmas.begin(), sigmas.end());
}

double rule_max_finite(const std::vector<double>& sigmas) {
  if (sigmas.empty()) fail(ErrorCode::EmptyFamily, "max rule over an empty family");
  return *std::min_element(sigmas.begin(), sigmas.end());
}

double rule_marginal(double sigma, double gamma) {
  if (sigma < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  if (!(gamma > 0.0)) fail(ErrorCode::NonpositiveGamma, "marginal rule needs gamma > 0");
  return sigma / (gamma * gamma);
}

double rule_affine_preimage(double sigma, double opnorm) {
  if (sigma < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  if (!(opnorm > 0.0)) fail(ErrorCode::ZeroOperator, "preimage rule needs a nonzero operator");
  return sigma / (opnorm * opnorm);
}

double rule_affine_pre(double sigma, double gamma) {
  if (sigma < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  if (!(gamma > 0.0)) fail(ErrorCode::NonpositiveGamma, "composition rule needs gamma > 0");
  return sigma / (gamma * gamma);
}

double rule_infconv(double sigma_joint) {
  if (sigma_joint < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  return sigma_joint;  // the sum-split map is 1-expansive under the sum norm
}

double rule_restrict(double sigma, double dist, bool unit_speed) {
  if (sigma < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  if (!(dist > 0.0)) fail(ErrorCode::CoincidentEndpoints, "restriction needs distinct endpoints");
  return unit_speed ? sigma : sigma * dist * dist;
}

double rule_marginal_min(double sigma_joint) {
  if (sigma_joint < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  return sigma_joint;
}

double rule_sup_value(double sigma_joint) {
  if (sigma_joint < 0.0) fail(ErrorCode::InvalidConstant, "sigma must be nonnegative");
  return sigma_joint;
}

// ---- constant estimation ----------------------------------------------------

double estimate_lower_lipschitz(const Expr& f, const ConvexDomain& domain, std::size_t budget,
                                std::uint64_t seed) {
  if (budget < 1) fail(ErrorCode::InvalidConstant, "estimation budget must be >= 1");
  Rng rng(seed);
  double ell = std::numeric_limits<double>::infinity();
  std::size_t usable = 0;
  for (std::size_t k = 0; k < budget; ++k) {
    Vec x = domain.sample(rng);
    Vec u = domain.sample(rng);
    double d = domain.space().distance(x, u);
    if (d < 1e-12) continue;
    double fx = f.eval(x).value();
    double fu = f.eval(u).value();
    if (std::isinf(fx) || std::isinf(fu)) continue;
    ell = std::min(ell, std::abs(fx - fu) / d);
    ++usable;
  }
  if (usable == 0) fail(ErrorCode::DegenerateSamples, "all sampled pairs coincide");
  return ell;
}

double estimate_expansiveness(const MapDescriptor& map, const ConvexDomain& domain,
                              std::size_t budget, std::uint64_t seed) {
  if (budget < 1) fail(ErrorCode::InvalidConstant, "estimation budget must be >= 1");
  Rng rng(seed);
  double gamma = 0.0;
  std::size_t usable = 0;
  for (std::size_t k = 0; k < budget; ++k) {
    Vec x1 = domain.sample(rng);
    Vec x2 = domain.sample(rng);
    double dx = domain.space().distance(x1, x2);
    if (dx < 1e-12) continue;
    switch (map.kind) {
      case MapDescriptor::Kind::SumSplit: {
        // y = (y1, x - y1); product carries the sum norm.
        Vec y1a = scaled(x1, rng.uniform());
        Vec y1b = scaled(x2, rng.uniform());
        Vec y2a = sub(x1, y1a);
        Vec y2b = sub(x2, y1b);
        double dy = domain.space().distance(y1a, y1b) + domain.space().distance(y2a, y2b);
        if (dy < 1e-12) continue;
        gamma = std::max(gamma, dx / dy);
        ++usable;
        break;
      }
      case MapDescriptor::Kind::AffineGraph: {
        Vec y1 = add(map.a.apply(x1), map.b);
        Vec y2 = add(map.a.apply(x2), map.b);
        double dy = domain.space().distance(y1, y2);
        if (dy < 1e-12) continue;
        gamma = std::max(gamma, dx / dy);
        ++usable;
        break;
      }
      case MapDescriptor::Kind::AffinePreimage: {
        Vec y1 = map.a.solve(sub(x1, map.b));
        Vec y2 = map.a.solve(sub(x2, map.b));
        double dy = domain.space().distance(y1, y2);
        if (dy < 1e-12) continue;
        gamma = std::max(gamma, dx / dy);
        ++usable;
        break;
      }
      case MapDescriptor::Kind::ProductSlice:
        fail(ErrorCode::InvalidConstant, "product slices have no expansiveness constant");
    }
  }
  if (usable == 0) fail(ErrorCode::DegenerateSamples, "all sampled graph pairs coincide");
  return gamma;
}

ConstantEstimates estimate_constants(const Expr& f, const MapDescriptor* map,
                                     const ConvexDomain& domain, std::size_t budget,
                                     std::uint64_t seed) {
  ConstantEstimates out;
  out.ell_lower = estimate_lower_lipschitz(f, domain, budget, seed);
  if (map) {
    if (map->kind != MapDescriptor::Kind::ProductSlice)
      out.gamma = estimate_expansiveness(*map, domain, budget, seed + 1);
    if (map->kind == MapDescriptor::Kind::AffineGraph ||
        map->kind == MapDescriptor::Kind::AffinePreimage) {
      SpaceSpec in(map->a.cols(), domain.space().p());
      SpaceSpec outsp(map->a.rows(), domain.space().p());
      out.opnorm = operator_norm(map->a, in, outsp, budget, seed + 2).value;
    }
  }
  return out;
}

// ---- certificate derivation --------------------------------------------------

namespace {

CertKind worse(CertKind a, CertKind b) {
  auto rank = [](CertKind k) {
    switch (k) {
      case CertKind::Declared:
        return 0;
      case CertKind::Derived:
        return 1;
      case CertKind::Estimated:
        return 2;
      case CertKind::Refuted:
        return 3;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

SigmaCertificate make_step(RuleKind rule, std::vector<SigmaCertificate> inputs,
                           std::vector<std::pair<std::string, double>> constants,
                           CertKind base_kind = CertKind::Derived) {
  SigmaCertificate out;
  std::vector<double> in_sigmas;
  out.kind = base_kind;
  for (auto& c : inputs) {
    in_sigmas.push_back(c.sigma);
    out.kind = worse(out.kind, c.kind == CertKind::Declared ? CertKind::Derived : c.kind);
    out.tolerance = std::max(out.tolerance, c.tolerance);
    for (auto& step : c.trace) out.trace.push_back(std::move(step));
  }
  RuleApplication app;
  app.rule = rule;
  app.inputs = in_sigmas;
  app.constants = std::move(constants);
  app.output = apply_rule_formula(rule, app.inputs, app.constants);
  out.sigma = app.output;
  out.trace.push_back(std::move(app));
  return out;
}

// Bounding box of sampled images: a conservative stand-in domain for
// estimating a child's sigma when the true image set is not representable.
ConvexDomain sampled_image_box(const std::function<Vec(const Vec&)>& fwd,
                               const ConvexDomain& domain, std::size_t out_dim,
                               std::uint64_t seed) {
  Rng rng(seed);
  Vec lo(out_dim, std::numeric_limits<double>::infinity());
  Vec hi(out_dim, -std::numeric_limits<double>::infinity());
  auto absorb = [&](const Vec& y) {
    for (std::size_t i = 0; i < out_dim; ++i) {
      lo[i] = std::min(lo[i], y[i]);
      hi[i] = std::max(hi[i], y[i]);
    }
  };
  for (const auto& p : domain.extreme_points()) absorb(fwd(p));
  for (int k = 0; k < 512; ++k) absorb(fwd(domain.sample(rng)));
  for (std::size_t i = 0; i < out_dim; ++i)
    if (!(lo[i] <= hi[i])) fail(ErrorCode::DegenerateSamples, "image box collapse");
  return ConvexDomain::box(lo, hi, SpaceSpec(out_dim, domain.space().p()));
}

struct Deriver {
  const DeriveOptions& opts;

  SigmaCertificate estimate_node(const Expr& f, const ConvexDomain& domain,
                                 std::optional<NormSpec> norm = std::nullopt) {
    if (!opts.allow_estimation)
      fail(ErrorCode::InvalidConstant,
           std::string("no declared sigma and estimation disabled at '") + f.kind() + "'");
    SearchOptions so;
    if (norm) so.norm = norm;
    SigmaEstimate est = estimate_sigma(f, domain, opts.estimate_budget, opts.seed, so);
    if (!est.quasiconvex) {
      SigmaCertificate c;
      c.kind = CertKind::Refuted;
      c.sigma = 0.0;
      c.witness = est.witness;
      return c;
    }
    // The estimator approaches the infimum from above; shave a small margin.
    double sigma = est.sigma_hat * (1.0 - 1e-3);
    SigmaCertificate c = SigmaCertificate::estimated(sigma, est.sigma_hat * 1e-3);
    return c;
  }

  void spot_check_gamma(const Matrix& a, const SpaceSpec& in_space, const SpaceSpec& out_space,
                        double gamma) {
    Rng rng(opts.seed + 17);
    for (std::size_t k = 0; k < opts.spot_check_samples; ++k) {
      Vec v = rng.normal_vector(in_space.dim());
      double nv = in_space.norm(v);
      if (nv <= 1e-300) continue;
      v = scaled(v, 1.0 / nv);
      double lhs = 1.0;
      double rhs = gamma * out_space.norm(a.apply(v));
      if (lhs > rhs + opts.spot_check_tol)
        fail(ErrorCode::GammaViolatedOnSamples,
             "declared gamma fails ||x|| <= gamma ||Ax|| on a sampled unit vector");
    }
  }

  void spot_check_lower_lipschitz(const Expr& inner, const ConvexDomain& domain, double ell) {
    if (ell == 0.0) return;
    Rng rng(opts.seed + 23);
    for (std::size_t k = 0; k < opts.spot_check_samples; ++k) {
      Vec x = domain.sample(rng);
      Vec u = domain.sample(rng);
      double d = domain.space().distance(x, u);
      if (d < 1e-12) continue;
      double fx = inner.eval(x).value();
      double fu = inner.eval(u).value();
      if (std::isinf(fx) || std::isinf(fu)) continue;
      if (ell * d > std::abs(fx - fu) + opts.spot_check_tol * (1.0 + std::abs(fx)))
        fail(ErrorCode::ConstantContradicted,
             "declared lower-Lipschitz constant contradicted on a sampled pair");
    }
  }

  void spot_check_convexity(const Expr& f, const ConvexDomain& domain) {
    Rng rng(opts.seed + 29);
    for (std::size_t k = 0; k < opts.spot_check_samples; ++k) {
      Vec x = domain.sample(rng);
      Vec u = domain.sample(rng);
      double lam = rng.uniform();
      Vec z = combine(x, u, lam);
      double fz = f.eval(z).value();
      double fx = f.eval(x).value();
      double fu = f.eval(u).value();
      if (std::isinf(fx) || std::isinf(fu)) continue;
      double bound = lam * fx + (1.0 - lam) * fu;
      if (fz > bound + opts.spot_check_tol * (1.0 + std::abs(bound)))
        fail(ErrorCode::ConstantContradicted,
             "declared-convex inner function fails midpoint convexity on samples");
    }
  }

  // sup of ||.||_space over the domain; exact for boxes and segments, the
  // triangle-inequality bound for balls, box enclosure otherwise.
  static double norm_bound_on(const SpaceSpec& space, const ConvexDomain& domain) {
    switch (domain.kind()) {
      case ConvexDomain::Kind::Segment:
        return std::max(space.norm(domain.seg_a()), space.norm(domain.seg_b()));
      case ConvexDomain::Kind::Ball: {
        if (space == domain.space())
          return space.norm(domain.ball_center()) + domain.ball_radius();
        Vec corner(space.dim());
        for (std::size_t i = 0; i < corner.size(); ++i)
          corner[i] = std::abs(domain.ball_center()[i]) + domain.ball_radius();
        return space.norm(corner);
      }
      case ConvexDomain::Kind::Box:
      case ConvexDomain::Kind::Interval: {
        Vec corner(space.dim());
        for (std::size_t i = 0; i < corner.size(); ++i)
          corner[i] = std::max(std::abs(domain.box_lo()[i]), std::abs(domain.box_hi()[i]));
        return space.norm(corner);
      }
    }
    fail(ErrorCode::InvalidConstant, "unknown domain kind");
  }

  // Certificate for a norm atom on `domain` from the modulus machinery.
  std::optional<SigmaCertificate> norm_certificate(const SpaceSpec& space,
                                                   const ConvexDomain& domain) {
    double bound = norm_bound_on(space, domain);
    if (bound <= 0.0) return std::nullopt;
    if (space.is_inner_product()) {
      SigmaCertificate c;
      c.kind = CertKind::Derived;
      RuleApplication app;
      app.rule = RuleKind::InnerProductNorm;
      app.constants = {{"radius", bound}};
      app.output = apply_rule_formula(app.rule, app.inputs, app.constants);
      c.sigma = app.output;
      c.trace.push_back(std::move(app));
      return c;
    }
    if (space.p() < 2.0) {
      // modulus lower bound (p-1) eps^2 / 8 gives sigma_A = p - 1
      double sigma_a = space.p() - 1.0;
      SigmaCertificate c;
      c.kind = CertKind::Derived;
      RuleApplication app;
      app.rule = RuleKind::NormModulus;
      app.inputs = {sigma_a};
      app.constants = {{"bound", bound}};
      app.output = apply_rule_formula(app.rule, app.inputs, app.constants);
      c.sigma = app.output;
      c.trace.push_back(std::move(app));
      return c;
    }
    return std::nullopt;  // p > 2: the modulus check fails; estimation only
  }

  SigmaCertificate derive(const ExprPtr& f, const ConvexDomain& domain) {
    if (f->declared_sigma()) return SigmaCertificate::declared(*f->declared_sigma());

    if (auto* n = dynamic_cast<const Scale*>(f.get())) {
      SigmaCertificate child = derive(n->child, domain);
      if (child.kind == CertKind::Refuted) return child;
      return make_step(RuleKind::Scale, {std::move(child)}, {{"c", n->factor}});
    }
    if (auto* n = dynamic_cast<const AddConstant*>(f.get())) {
      SigmaCertificate child = derive(n->child, domain);
      if (child.kind == CertKind::Refuted) return child;
      return make_step(RuleKind::AffinePre, {std::move(child)}, {{"gamma", 1.0}});
    }
    if (auto* n = dynamic_cast<const Shift*>(f.get())) {
      ConvexDomain shifted = shift_domain(domain, n->offset);
      SigmaCertificate child = derive(n->child, shifted);
      if (child.kind == CertKind::Refuted) return child;
      return make_step(RuleKind::AffinePre, {std::move(child)}, {{"gamma", 1.0}});
    }
    if (auto* n = dynamic_cast<const SupFamily*>(f.get())) {
      std::vector<SigmaCertificate> kids;
      for (const auto& c : n->children) {
        kids.push_back(derive(c, domain));
        if (kids.back().kind == CertKind::Refuted) return kids.back();
      }
      return make_step(RuleKind::SupFamily, std::move(kids), {});
    }
    if (auto* n = dynamic_cast<const MaxFinite*>(f.get())) {
      std::vector<SigmaCertificate> kids;
      for (const auto& c : n->children) {
        kids.push_back(derive(c, domain));
        if (kids.back().kind == CertKind::Refuted) return kids.back();
      }
      return make_step(RuleKind::MaxFinite, std::move(kids), {});
    }
    if (auto* n = dynamic_cast<const ComposeMonotone*>(f.get())) {
      spot_check_convexity(*n->inner, domain);
      spot_check_lower_lipschitz(*n->inner, domain, n->ell);
      // Outer sigma over the sampled inner range.
      Rng rng(opts.seed + 31);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (int k = 0; k < 256; ++k) {
        double v = n->inner->eval(domain.sample(rng)).value();
        if (std::isinf(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (!(lo < hi)) fail(ErrorCode::DegenerateSamples, "inner range collapsed");
      SigmaCertificate outer_cert =
          n->outer->declared_sigma()
              ? SigmaCertificate::declared(*n->outer->declared_sigma())
              : estimate_node(*n->outer, ConvexDomain::interval(lo, hi));
      if (outer_cert.kind == CertKind::Refuted) return outer_cert;
      return make_step(RuleKind::ComposeMonotone, {std::move(outer_cert)}, {{"ell", n->ell}});
    }
    if (auto* n = dynamic_cast<const AffinePre*>(f.get())) {
      SpaceSpec in_space(n->a.cols(), domain.space().p());
      SpaceSpec out_space(n->a.rows(), domain.space().p());
      double gamma;
      CertKind base = CertKind::Derived;
      if (n->gamma) {
        gamma = *n->gamma;
        spot_check_gamma(n->a, in_space, out_space, gamma);
      } else {
        // gamma = sup ||x|| / ||Ax||, sampled and inflated.
        Rng rng(opts.seed + 37);
        double g = 0.0;
        for (std::size_t k = 0; k < std::max<std::size_t>(opts.estimate_budget, 512); ++k) {
          Vec v = rng.normal_vector(in_space.dim());
          double nv = in_space.norm(v);
          double na = out_space.norm(n->a.apply(v));
          if (nv <= 1e-300) continue;
          if (na <= 1e-300) fail(ErrorCode::ZeroOperator, "affine map crushes a direction");
          g = std::max(g, nv / na);
        }
        gamma = g * 1.01;
        base = CertKind::Estimated;
      }
      ConvexDomain child_domain = sampled_image_box(
          [&](const Vec& p) { return add(n->a.apply(p), n->b); }, domain, n->a.rows(),
          opts.seed + 41);
      SigmaCertificate child = derive(n->child, child_domain);
      if (child.kind == CertKind::Refuted) return child;
      SigmaCertificate out = make_step(RuleKind::AffinePre, {std::move(child)},
                                       {{"gamma", gamma}}, base);
      return out;
    }
    if (auto* n = dynamic_cast<const Restrict*>(f.get())) {
      ConvexDomain seg = ConvexDomain::segment(n->u, n->x, n->space);
      SigmaCertificate child = derive(n->child, seg);
      if (child.kind == CertKind::Refuted) return child;
      return make_step(RuleKind::RestrictSegment, {std::move(child)},
                       {{"dist", n->endpoint_distance()},
                        {"unit_speed", n->unit_speed ? 1.0 : 0.0}});
    }
    if (auto* n = dynamic_cast<const InfConv*>(f.get())) {
      SigmaCertificate joint =
          n->joint_sigma ? SigmaCertificate::declared(*n->joint_sigma)
                         : estimate_joint_sum(*n, domain);
      if (joint.kind == CertKind::Refuted) return joint;
      return make_step(RuleKind::InfConv, {std::move(joint)}, {});
    }
    if (auto* n = dynamic_cast<const MarginalMin*>(f.get())) {
      return derive_value_function(*n, n->joint, n->map, n->product_p, n->joint_sigma, domain,
                                   RuleKind::MarginalMin);
    }
    if (auto* n = dynamic_cast<const SupValue*>(f.get())) {
      return derive_value_function(*n, n->joint, n->map, n->product_p, n->joint_sigma, domain,
                                   RuleKind::SupValue);
    }
    if (auto* n = dynamic_cast<const NormAtom*>(f.get())) {
      if (auto c = norm_certificate(n->space, domain)) return *c;
      return estimate_node(*f, domain);
    }
    if (auto* n = dynamic_cast<const PowerNormAtom*>(f.get())) {
      if (auto base = norm_certificate(n->space, domain)) {
        double radius = norm_bound_on(n->space, domain);
        return make_step(RuleKind::PowerNorm, {std::move(*base)},
                         {{"a", n->exponent}, {"radius", radius}});
      }
      return estimate_node(*f, domain);
    }
    return estimate_node(*f, domain);
  }

  static ConvexDomain shift_domain(const ConvexDomain& d, const Vec& offset) {
    switch (d.kind()) {
      case ConvexDomain::Kind::Ball:
        return ConvexDomain::ball(add(d.ball_center(), offset), d.ball_radius(), d.space());
      case ConvexDomain::Kind::Box:
        return ConvexDomain::box(add(d.box_lo(), offset), add(d.box_hi(), offset), d.space());
      case ConvexDomain::Kind::Interval:
        return ConvexDomain::interval(d.interval_lo() + offset[0], d.interval_hi() + offset[0],
                                      d.space().p());
      case ConvexDomain::Kind::Segment:
        return ConvexDomain::segment(add(d.seg_a(), offset), add(d.seg_b(), offset), d.space());
    }
    fail(ErrorCode::InvalidConstant, "unknown domain kind");
  }

  SigmaCertificate estimate_joint_sum(const InfConv& n, const ConvexDomain& domain) {
    // Joint (x1, x2) -> left(x1) + right(x2) over the inner box squared,
    // under the sum norm on the product.
    struct JointSum final : Expr {
      const InfConv* node;
      explicit JointSum(const InfConv* n) : node(n) {}
      std::size_t input_dim() const override { return 2 * node->left->input_dim(); }
      ExtReal eval(std::span<const double> xy) const override {
        std::size_t half = node->left->input_dim();
        return node->left->eval(xy.subspan(0, half)) + node->right->eval(xy.subspan(half));
      }
      const char* kind() const override { return "joint_sum"; }
    };
    JointSum joint(&n);
    std::size_t half = n.left->input_dim();
    Vec lo = n.inner_lo, hi = n.inner_hi;
    lo.insert(lo.end(), n.inner_lo.begin(), n.inner_lo.end());
    hi.insert(hi.end(), n.inner_hi.begin(), n.inner_hi.end());
    SpaceSpec block(half, domain.space().p());
    ConvexDomain product = ConvexDomain::box(lo, hi, SpaceSpec(2 * half, 2.0));
    return estimate_node(joint, product, NormSpec(ProductNorm(block, block, 1.0)));
  }

  SigmaCertificate derive_value_function(const Expr& node, const ExprPtr& joint,
                                         const MapDescriptor& map, double product_p,
                                         std::optional<double> joint_sigma,
                                         const ConvexDomain& domain, RuleKind rule) {
    if (map.kind == MapDescriptor::Kind::AffinePreimage) {
      // mu(x) = inf over the affine preimage; joint lives on the image space.
      double gamma;
      RuleKind used_rule;
      CertKind base = CertKind::Derived;
      std::vector<std::pair<std::string, double>> constants;
      SpaceSpec ysp(map.a.cols(), domain.space().p());
      if (map.gamma) {
        gamma = *map.gamma;
        used_rule = RuleKind::Marginal;
        constants = {{"gamma", gamma}};
      } else {
        OperatorNormEstimate on =
            operator_norm(map.a, ysp, SpaceSpec(map.a.rows(), domain.space().p()),
                          opts.estimate_budget, opts.seed + 43);
        gamma = on.value;
        used_rule = RuleKind::AffinePreimage;
        constants = {{"opnorm", gamma}};
        if (!on.exact) base = CertKind::Estimated;
      }
      ConvexDomain child_domain = sampled_image_box(
          [&](const Vec& p) { return map.a.solve(sub(p, map.b)); }, domain, map.a.cols(),
          opts.seed + 47);
      SigmaCertificate child = derive(joint, child_domain);
      if (child.kind == CertKind::Refuted) return child;
      return make_step(used_rule, {std::move(child)}, std::move(constants), base);
    }

    SigmaCertificate joint_cert =
        joint_sigma ? SigmaCertificate::declared(*joint_sigma)
                    : estimate_joint_product(node, joint, map, product_p, domain);
    if (joint_cert.kind == CertKind::Refuted) return joint_cert;
    return make_step(rule, {std::move(joint_cert)}, {{"product_p", product_p}});
  }

  SigmaCertificate estimate_joint_product(const Expr& node, const ExprPtr& joint,
                                          const MapDescriptor& map, double product_p,
                                          const ConvexDomain& domain) {
    std::size_t xdim = node.input_dim();
    std::size_t ydim = joint->input_dim() - xdim;
    // x block from the query domain's bounding box; y block from the slice
    // (shifted by the x range when anchored) or the sampled graph image.
    Vec xlo(xdim, std::numeric_limits<double>::infinity()), xhi(xdim, -1e308);
    for (const auto& p : domain.extreme_points())
      for (std::size_t i = 0; i < xdim; ++i) {
        xlo[i] = std::min(xlo[i], p[i]);
        xhi[i] = std::max(xhi[i], p[i]);
      }
    if (domain.kind() == ConvexDomain::Kind::Ball)
      for (std::size_t i = 0; i < xdim; ++i) {
        xlo[i] = std::min(xlo[i], domain.ball_center()[i] - domain.ball_radius());
        xhi[i] = std::max(xhi[i], domain.ball_center()[i] + domain.ball_radius());
      }
    Vec ylo(ydim), yhi(ydim);
    if (map.kind == MapDescriptor::Kind::ProductSlice) {
      for (std::size_t i = 0; i < ydim; ++i) {
        ylo[i] = map.slice_lo[i] + (map.anchored ? xlo[i] : 0.0);
        yhi[i] = map.slice_hi[i] + (map.anchored ? xhi[i] : 0.0);
      }
    } else {  // AffineGraph
      Rng rng(opts.seed + 53);
      for (std::size_t i = 0; i < ydim; ++i) {
        ylo[i] = std::numeric_limits<double>::infinity();
        yhi[i] = -ylo[i];
      }
      for (int k = 0; k < 512; ++k) {
        Vec y = add(map.a.apply(domain.sample(rng)), map.b);
        for (std::size_t i = 0; i < ydim; ++i) {
          ylo[i] = std::min(ylo[i], y[i]);
          yhi[i] = std::max(yhi[i], y[i]);
        }
      }
    }
    Vec lo = xlo, hi = xhi;
    lo.insert(lo.end(), ylo.begin(), ylo.end());
    hi.insert(hi.end(), yhi.begin(), yhi.end());
    ConvexDomain product = ConvexDomain::box(lo, hi, SpaceSpec(xdim + ydim, 2.0));
    SpaceSpec xsp(xdim, domain.space().p());
    SpaceSpec ysp(ydim, domain.space().p());
    return estimate_node(*joint, product, NormSpec(ProductNorm(xsp, ysp, product_p)));
  }
};

}  // namespace

SigmaCertificate derive_certificate(const ExprPtr& f, const ConvexDomain& domain,
                                    const DeriveOptions& opts) {
  if (!f) fail(ErrorCode::InvalidConstant, "null expression");
  Deriver d{opts};
  return d.derive(f, domain);
}

}  // namespace sqckit
