#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace allee {

enum class ErrorCode {
  NonPositiveParameter,
  AlleeThresholdOutOfRange,
  DomainViolation,
  InconsistentInput,
  NotSemiDegenerate,
  NotDoublyDegenerate,
  NoZeroEigenvalue,
  HopfInadmissible,
  NotAWeakCenter,
  CuspConditionsViolated,
  SignAssumptionViolated,
  NoCrossings,
  InvalidSweep,
  InvalidArgument,
  NumericalFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by the caller's input (bad parameters, violated
/// preconditions). False for failures of the numerics themselves.
bool is_contract_violation(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace allee
