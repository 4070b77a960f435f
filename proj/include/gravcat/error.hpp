#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gravcat {

enum class ErrorCode {
  NotHermitian,
  NonFiniteResult,
  InvalidState,
  InvalidParameter,
  DegenerateGeometry,
  OutOfRange,
  ZeroSuccessProbability,
  DimensionMismatch,
};

/// snake_case identifier used in machine-readable error objects.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gravcat
