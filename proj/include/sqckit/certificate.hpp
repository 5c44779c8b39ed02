#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqckit/errors.hpp"
#include "sqckit/witness.hpp"

namespace sqckit {

enum class CertKind { Declared, Derived, Estimated, Refuted };

const char* cert_kind_name(CertKind k);

enum class RuleKind {
  Scale,
  ComposeMonotone,
  SupFamily,
  MaxFinite,
  Marginal,
  AffinePreimage,
  AffinePre,
  InfConv,
  RestrictSegment,
  MarginalMin,
  SupValue,
  // certificate sources outside the combinator calculus
  InnerProductNorm,
  NormModulus,
  PowerNorm,
  GaugeModulus,
  Declared,
  Estimated,
};

const char* rule_kind_name(RuleKind r);

/// One step of the certificate derivation: which rule fired, the input sigma
/// values, the named constants it consumed, and the sigma it produced.
/// `output` is exactly the rule formula applied to inputs and constants.
struct RuleApplication {
  RuleKind rule;
  std::vector<double> inputs;
  std::vector<std::pair<std::string, double>> constants;
  double output = 0.0;
};

/// Certificate that a function is sigma-quasiconvex on its stated domain,
/// with provenance. Derived certificates replay exactly from the trace.
struct SigmaCertificate {
  double sigma = 0.0;
  CertKind kind = CertKind::Declared;
  std::vector<RuleApplication> trace;
  double tolerance = 0.0;  // 0 for declared/derived
  std::optional<ViolationWitness> witness;  // present iff kind == Refuted

  static SigmaCertificate declared(double sigma);
  static SigmaCertificate estimated(double sigma, double tolerance);

  /// Recomputes the final sigma by re-running every trace formula.
  /// Bit-exact for derived certificates.
  double replay() const;
};

/// Applies one rule formula; shared by the calculus and the replayer.
double apply_rule_formula(RuleKind rule, const std::vector<double>& inputs,
                          const std::vector<std::pair<std::string, double>>& constants);

}  // namespace sqckit
