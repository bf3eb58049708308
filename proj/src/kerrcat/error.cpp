#include "kerrcat/error.hpp"

namespace kerrcat {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::TruncationRisk: return "truncation-risk";
    case ErrorCode::NotHermitian: return "not-hermitian";
    case ErrorCode::DegenerateBasis: return "degenerate-basis";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Pole: return "pole";
    case ErrorCode::NoConvergence: return "no-convergence";
    case ErrorCode::BasisMismatch: return "basis-mismatch";
    case ErrorCode::RankDeficient: return "rank-deficient";
    case ErrorCode::InsufficientDimension: return "insufficient-dimension";
    case ErrorCode::InexactConversion: return "inexact-conversion";
    case ErrorCode::Io: return "io";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace kerrcat
