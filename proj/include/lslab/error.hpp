#pragma once

#include <stdexcept>
#include <string>

namespace lslab {

enum class ErrorCode {
  DimensionMismatch,
  Domain,
  BadConfig,
  DegenerateShell,
  OutsideBase,
  OnZeroSet,
  NotNormalized,
  Normalization,
  InsufficientPoints,
  NonpositiveValue,
  AllDirectionsDegenerate,
  ParseError,
  ConstantPoly,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::BadConfig: return "BAD_CONFIG";
    case ErrorCode::DegenerateShell: return "DEGENERATE_SHELL";
    case ErrorCode::OutsideBase: return "OUTSIDE_BASE";
    case ErrorCode::OnZeroSet: return "ON_ZERO_SET";
    case ErrorCode::NotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::Normalization: return "NORMALIZATION";
    case ErrorCode::InsufficientPoints: return "INSUFFICIENT_POINTS";
    case ErrorCode::NonpositiveValue: return "NONPOSITIVE_VALUE";
    case ErrorCode::AllDirectionsDegenerate: return "ALL_DIRECTIONS_DEGENERATE";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::ConstantPoly: return "CONSTANT_POLY";
  }
  return "UNKNOWN";
}

/// Error type carrying a machine-readable code; the CLI maps these to exit
/// code 2 and a structured JSON error object.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) {
  throw LabError(c, msg);
}

inline void require(bool ok, ErrorCode c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

}  // namespace lslab
