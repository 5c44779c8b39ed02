#include "sqckit/errors.hpp"

namespace sqckit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::InnerSearchBudgetExceeded:
      return "InnerSearchBudgetExceeded";
    case ErrorCode::ParseError:
      return "ParseError";
    case ErrorCode::UnknownAtom:
      return "UnknownAtom";
    case ErrorCode::InvalidConstant:
      return "InvalidConstant";
    case ErrorCode::NonpositiveScalar:
      return "NonpositiveScalar";
    case ErrorCode::NegativeConstant:
      return "NegativeConstant";
    case ErrorCode::EmptyFamily:
      return "EmptyFamily";
    case ErrorCode::NonpositiveGamma:
      return "NonpositiveGamma";
    case ErrorCode::ZeroOperator:
      return "ZeroOperator";
    case ErrorCode::GammaViolatedOnSamples:
      return "GammaViolatedOnSamples";
    case ErrorCode::ConstantContradicted:
      return "ConstantContradicted";
    case ErrorCode::UnboundedBelowDetected:
      return "UnboundedBelowDetected";
    case ErrorCode::CoincidentEndpoints:
      return "CoincidentEndpoints";
    case ErrorCode::EmptyImageOnDomain:
      return "EmptyImageOnDomain";
    case ErrorCode::DegenerateSamples:
      return "DegenerateSamples";
    case ErrorCode::EpsOutOfRange:
      return "EpsOutOfRange";
    case ErrorCode::NoAdmissiblePairFound:
      return "NoAdmissiblePairFound";
    case ErrorCode::AssumptionAViolated:
      return "AssumptionAViolated";
    case ErrorCode::NotInnerProduct:
      return "NotInnerProduct";
    case ErrorCode::ExponentOutOfRange:
      return "ExponentOutOfRange";
    case ErrorCode::OriginNotInterior:
      return "OriginNotInterior";
    case ErrorCode::MidpointOutsideDomain:
      return "MidpointOutsideDomain";
    case ErrorCode::AllSamplesDegenerate:
      return "AllSamplesDegenerate";
    case ErrorCode::GridTooCoarse:
      return "GridTooCoarse";
    case ErrorCode::NoFiniteValueFound:
      return "NoFiniteValueFound";
    case ErrorCode::EmptyShell:
      return "EmptyShell";
    case ErrorCode::FixtureParseError:
      return "FixtureParseError";
    case ErrorCode::SpecSyntax:
      return "SpecSyntax";
    case ErrorCode::NonpositiveRadius:
      return "NonpositiveRadius";
    case ErrorCode::LoAboveHi:
      return "LoAboveHi";
  }
  return "UnknownError";
}

}  // namespace sqckit
