// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pinfo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Failure categories surfaced by the library.  Every throwing operation
/// documents which codes it can raise.
enum class ErrorCode {
  NotHermitian,
  NegativeEigenvalue,
  FunctionUndefined,
  NegativeN,
  NegativeIntensity,
  DimensionMismatch,
  LengthMismatch,
  SOutOfRange,
  DerivativeOutsideSupport,
  SingularLyapunov,
  ZeroIntensityWithDerivative,
  InvalidChannel,
  RarityViolated,
  SupportViolation,
  ModeCountMismatch,
  BadInput,
};

const char* to_string(ErrorCode code);

/// Domain error: carries a machine-readable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical tolerances shared across validation routines.  All values are
/// relative: herm/psd to the matrix scale, supp to the largest eigenvalue,
/// recon to the reconstructed norm.
struct Tolerances {
  double herm = 1e-10;
  double psd = 1e-10;
  double supp = 1e-12;
  double recon = 1e-10;
};

/// Counter-friendly 64-bit generator (SplitMix64).  Chosen for portability:
/// the stream is fully defined by integer arithmetic, so identical seeds give
/// identical draws on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    return mix(z);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Stateless finalizer; used to derive independent per-trial keys.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Locale-independent scientific formatting with 17 significant digits.
/// Infinities map to "inf"/"-inf" rather than a large float.
std::string format_double(double value);

}  // namespace pinfo
