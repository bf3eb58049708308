#pragma once

#include <stdexcept>
#include <string>

namespace kerrcat {

/// Failure categories shared by the C++ core and the C API status codes.
/// The numeric values are part of the C ABI (see kc_status in kerrcat.h).
enum class ErrorCode : int {
  InvalidArgument = 1,
  InvalidDimension = 2,
  TruncationRisk = 3,
  NotHermitian = 4,
  DegenerateBasis = 5,
  Domain = 6,
  Pole = 7,
  NoConvergence = 8,
  BasisMismatch = 9,
  RankDeficient = 10,
  InsufficientDimension = 11,
  InexactConversion = 12,
  Io = 13,
  Internal = 14,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace kerrcat
