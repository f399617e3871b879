// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/common.hpp"

#include <charconv>
#include <cmath>

namespace pinfo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::FunctionUndefined: return "FunctionUndefined";
    case ErrorCode::NegativeN: return "NegativeN";
    case ErrorCode::NegativeIntensity: return "NegativeIntensity";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SOutOfRange: return "SOutOfRange";
    case ErrorCode::DerivativeOutsideSupport: return "DerivativeOutsideSupport";
    case ErrorCode::SingularLyapunov: return "SingularLyapunov";
    case ErrorCode::ZeroIntensityWithDerivative: return "ZeroIntensityWithDerivative";
    case ErrorCode::InvalidChannel: return "InvalidChannel";
    case ErrorCode::RarityViolated: return "RarityViolated";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::ModeCountMismatch: return "ModeCountMismatch";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

}  // namespace pinfo
