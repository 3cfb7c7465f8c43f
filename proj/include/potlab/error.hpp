#pragma once

#include <stdexcept>
#include <string>

namespace potlab {

enum class ErrorCode {
  DimensionMismatch,
  EvaluationAtAtom,
  LadderBelowResolution,
  LogDomainViolation,
  TooManyAtoms,
  GaugeViolation,
  BudgetExceeded,
  NonConvergence,
  OverlappingDiscs,
  EmptyInput,
  InvalidArgument,
  ConfigError,
  IoError,
};

const char* error_code_name(ErrorCode code);

/// Library error carrying a stable code for exit-status mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace potlab
