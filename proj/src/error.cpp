#include "censtail/error.hpp"

namespace censtail {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NonPositiveObservation: return "NonPositiveObservation";
    case ErrorCode::InvalidIndicator: return "InvalidIndicator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::DegenerateP: return "DegenerateP";
    case ErrorCode::ZeroSurvivalAtThreshold: return "ZeroSurvivalAtThreshold";
    case ErrorCode::UnknownKernel: return "UnknownKernel";
    case ErrorCode::KernelAxiomViolation: return "KernelAxiomViolation";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> row)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      row_(row) {}

}  // namespace censtail
