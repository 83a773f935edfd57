#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace equistrat {

enum class ErrorCode {
  OrderExceeded,
  NotOrthogonal,
  NotIntegral,
  InternalMismatch,
  SplitFailed,
  DimensionMismatch,
  NoEquivariants,
  FixViolation,
  GenericRankFailed,
  DegreeCapExceeded,
  EndoTypeAmbiguous,
  LengthMismatch,
  InvalidArgument,
  SpecError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace equistrat
