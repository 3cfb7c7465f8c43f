#include "potlab/error.hpp"

namespace potlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EvaluationAtAtom: return "EvaluationAtAtom";
    case ErrorCode::LadderBelowResolution: return "LadderBelowResolution";
    case ErrorCode::LogDomainViolation: return "LogDomainViolation";
    case ErrorCode::TooManyAtoms: return "TooManyAtoms";
    case ErrorCode::GaugeViolation: return "GaugeViolation";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::OverlappingDiscs: return "OverlappingDiscs";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace potlab
