#pragma once

#include <stdexcept>
#include <string>

namespace sqckit {

enum class ErrorCode {
  DimensionMismatch,
  InnerSearchBudgetExceeded,
  ParseError,
  UnknownAtom,
  InvalidConstant,
  NonpositiveScalar,
  NegativeConstant,
  EmptyFamily,
  NonpositiveGamma,
  ZeroOperator,
  GammaViolatedOnSamples,
  ConstantContradicted,
  UnboundedBelowDetected,
  CoincidentEndpoints,
  EmptyImageOnDomain,
  DegenerateSamples,
  EpsOutOfRange,
  NoAdmissiblePairFound,
  AssumptionAViolated,
  NotInnerProduct,
  ExponentOutOfRange,
  OriginNotInterior,
  MidpointOutsideDomain,
  AllSamplesDegenerate,
  GridTooCoarse,
  NoFiniteValueFound,
  EmptyShell,
  FixtureParseError,
  SpecSyntax,
  NonpositiveRadius,
  LoAboveHi,
};

const char* error_code_name(ErrorCode code);

/// All library failures are thrown as Error with a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace sqckit
