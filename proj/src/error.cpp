#include "gravcat/error.hpp"

namespace gravcat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "not_hermitian";
    case ErrorCode::NonFiniteResult: return "non_finite_result";
    case ErrorCode::InvalidState: return "invalid_state";
    case ErrorCode::InvalidParameter: return "invalid_parameter";
    case ErrorCode::DegenerateGeometry: return "degenerate_geometry";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::ZeroSuccessProbability: return "zero_success_probability";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
  }
  return "unknown";
}

}  // namespace gravcat
