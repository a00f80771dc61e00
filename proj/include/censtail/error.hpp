#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace censtail {

enum class ErrorCode {
  EmptySample,
  NonPositiveObservation,
  InvalidIndicator,
  ParseError,
  IoError,
  InvalidK,
  DegenerateP,
  ZeroSurvivalAtThreshold,
  UnknownKernel,
  KernelAxiomViolation,
  InvalidSpec,
  DomainError,
  ConfigError,
  TooFewPoints,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library. `row()` is set for errors tied to a
// line of CSV input (1-based, counting data rows only).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> row = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
};

}  // namespace censtail
