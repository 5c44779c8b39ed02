#include "sqckit/certificate.hpp"

#include <algorithm>
#include <cmath>

namespace sqckit {

const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::Declared:
      return "declared";
    case CertKind::Derived:
      return "derived";
    case CertKind::Estimated:
      return "estimated";
    case CertKind::Refuted:
      return "refuted";
  }
  return "?";
}

const char* rule_kind_name(RuleKind r) {
  switch (r) {
    case RuleKind::Scale:
      return "Scale";
    case RuleKind::ComposeMonotone:
      return "ComposeMonotone";
    case RuleKind::SupFamily:
      return "SupFamily";
    case RuleKind::MaxFinite:
      return "MaxFinite";
    case RuleKind::Marginal:
      return "Marginal";
    case RuleKind::AffinePreimage:
      return "AffinePreimage";
    case RuleKind::AffinePre:
      return "AffinePre";
    case RuleKind::InfConv:
      return "InfConv";
    case RuleKind::RestrictSegment:
      return "RestrictSegment";
    case RuleKind::MarginalMin:
      return "MarginalMin";
    case RuleKind::SupValue:
      return "SupValue";
    case RuleKind::InnerProductNorm:
      return "InnerProductNorm";
    case RuleKind::NormModulus:
      return "NormModulus";
    case RuleKind::PowerNorm:
      return "PowerNorm";
    case RuleKind::GaugeModulus:
      return "GaugeModulus";
    case RuleKind::Declared:
      return "Declared";
    case RuleKind::Estimated:
      return "Estimated";
  }
  return "?";
}

SigmaCertificate SigmaCertificate::declared(double sigma) {
  if (sigma < 0.0) fail(ErrorCode::InvalidConstant, "certificate sigma must be nonnegative");
  SigmaCertificate c;
  c.sigma = sigma;
  c.kind = CertKind::Declared;
  c.trace.push_back({RuleKind::Declared, {sigma}, {}, sigma});
  return c;
}

SigmaCertificate SigmaCertificate::estimated(double sigma, double tolerance) {
  if (sigma < 0.0) fail(ErrorCode::InvalidConstant, "certificate sigma must be nonnegative");
  SigmaCertificate c;
  c.sigma = sigma;
  c.kind = CertKind::Estimated;
  c.tolerance = tolerance;
  c.trace.push_back({RuleKind::Estimated, {sigma}, {}, sigma});
  return c;
}

static double named(const std::vector<std::pair<std::string, double>>& constants,
                    const char* name) {
  for (const auto& [k, v] : constants)
    if (k == name) return v;
  fail(ErrorCode::InvalidConstant, std::string("trace constant missing: ") + name);
}

double apply_rule_formula(RuleKind rule, const std::vector<double>& inputs,
                          const std::vector<std::pair<std::string, double>>& constants) {
  switch (rule) {
    case RuleKind::Scale:
      return named(constants, "c") * inputs.at(0);
    case RuleKind::ComposeMonotone: {
      double ell = named(constants, "ell");
      return inputs.at(0) * ell * ell;
    }
    case RuleKind::SupFamily:
    case RuleKind::MaxFinite:
      return *std::min_element(inputs.begin(), inputs.end());
    case RuleKind::Marginal: {
      double g = named(constants, "gamma");
      return inputs.at(0) / (g * g);
    }
    case RuleKind::AffinePreimage: {
      double n = named(constants, "opnorm");
      return inputs.at(0) / (n * n);
    }
    case RuleKind::AffinePre: {
      double g = named(constants, "gamma");
      return inputs.at(0) / (g * g);
    }
    case RuleKind::InfConv:
    case RuleKind::MarginalMin:
    case RuleKind::SupValue:
      return inputs.at(0);
    case RuleKind::RestrictSegment: {
      double d = named(constants, "dist");
      bool unit_speed = named(constants, "unit_speed") != 0.0;
      return unit_speed ? inputs.at(0) : inputs.at(0) * d * d;
    }
    case RuleKind::NormModulus: {
      double m = named(constants, "bound");
      return inputs.at(0) / (2.0 * m);
    }
    case RuleKind::InnerProductNorm:
      return 1.0 / named(constants, "radius");
    case RuleKind::PowerNorm: {
      double a = named(constants, "a");
      double r = named(constants, "radius");
      return a * std::pow(r, a - 1.0) * inputs.at(0);
    }
    case RuleKind::GaugeModulus:
      return inputs.at(0) / 2.0;
    case RuleKind::Declared:
    case RuleKind::Estimated:
      return inputs.at(0);
  }
  fail(ErrorCode::InvalidConstant, "unknown rule in trace");
}

double SigmaCertificate::replay() const {
  if (trace.empty()) return sigma;
  double out = 0.0;
  for (const auto& step : trace) out = apply_rule_formula(step.rule, step.inputs, step.constants);
  return out;
}

}  // namespace sqckit
