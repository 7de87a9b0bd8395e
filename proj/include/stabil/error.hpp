#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stabil {

enum class ErrorCode {
  InvalidArgument,
  ZeroPolynomial,
  DegreeZero,
  NonConvergence,
  DivisorZero,
  DegreeOverflow,
  TauZero,
  SamplerExhausted,
  TruncationTooDeep,
  TruncationTooShallow,
  RankTooLow,
  Psi0Zero,
  Psi0VanishesOnGrid,
  ZeroAtOrigin,
  PreconditionViolated,
  ZeroSignal,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DivisorZero: return "DivisorZero";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::TauZero: return "TauZero";
    case ErrorCode::SamplerExhausted: return "SamplerExhausted";
    case ErrorCode::TruncationTooDeep: return "TruncationTooDeep";
    case ErrorCode::TruncationTooShallow: return "TruncationTooShallow";
    case ErrorCode::RankTooLow: return "RankTooLow";
    case ErrorCode::Psi0Zero: return "Psi0Zero";
    case ErrorCode::Psi0VanishesOnGrid: return "Psi0VanishesOnGrid";
    case ErrorCode::ZeroAtOrigin: return "ZeroAtOrigin";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ZeroSignal: return "ZeroSignal";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace stabil
