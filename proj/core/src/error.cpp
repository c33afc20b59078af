#include "allee/error.hpp"

namespace allee {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::AlleeThresholdOutOfRange: return "AlleeThresholdOutOfRange";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::InconsistentInput: return "InconsistentInput";
    case ErrorCode::NotSemiDegenerate: return "NotSemiDegenerate";
    case ErrorCode::NotDoublyDegenerate: return "NotDoublyDegenerate";
    case ErrorCode::NoZeroEigenvalue: return "NoZeroEigenvalue";
    case ErrorCode::HopfInadmissible: return "HopfInadmissible";
    case ErrorCode::NotAWeakCenter: return "NotAWeakCenter";
    case ErrorCode::CuspConditionsViolated: return "CuspConditionsViolated";
    case ErrorCode::SignAssumptionViolated: return "SignAssumptionViolated";
    case ErrorCode::NoCrossings: return "NoCrossings";
    case ErrorCode::InvalidSweep: return "InvalidSweep";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

bool is_contract_violation(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SignAssumptionViolated:
    case ErrorCode::NoCrossings:
    case ErrorCode::NumericalFailure:
      return false;
    default:
      return true;
  }
}

}  // namespace allee
