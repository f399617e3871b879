// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "pinfo/poisson_state.hpp"

namespace pinfo {

/// Vector of nonnegative per-outcome intensities (a classical Poisson
/// process over finitely many bins).  Entries in [-1e-12 * max, 0) are
/// rounding noise and clip to zero; genuinely negative entries raise
/// NegativeIntensity.  After construction a zero entry is exactly 0.0, which
/// is what the support conventions below compare against.
class IntensityVector {
 public:
  explicit IntensityVector(RealVector values);

  int size() const { return static_cast<int>(values_.size()); }
  double total() const { return total_; }
  const RealVector& values() const { return values_; }
  double operator[](int j) const { return values_[j]; }

 private:
  RealVector values_;
  double total_;
};

enum class DivergenceKind {
  Fidelity,
  BuresSq,
  ChernoffS,
  ChernoffDistance,
  AlphaDiv,
  RelEntropy,
};

const char* to_string(DivergenceKind kind);

/// Result wrapper: value may be +infinity (relative entropy without support
/// containment); s_star is set only for ChernoffDistance.
struct DivergenceReport {
  DivergenceKind kind;
  double value = 0.0;
  std::optional<double> s_star;
};

// -- Quantum (intensity-operator) quantities --------------------------------

/// F(Gamma, Gamma') = tr sqrt(sqrt(Gamma) Gamma' sqrt(Gamma)), evaluated as
/// the sum of square roots of the eigenvalues of Gamma * Gamma'.
double fidelity(const IntensityOperator& a, const IntensityOperator& b);

/// Squared Bures-Wasserstein distance N + N' - 2 F(Gamma, Gamma'), >= 0.
double bures_sq(const IntensityOperator& a, const IntensityOperator& b);

/// Fidelity of the full Poisson states: exp(-(N + N')/2 + F(Gamma, Gamma')).
double poisson_state_fidelity(const IntensityOperator& a, const IntensityOperator& b);

/// C_s(Gamma, Gamma') = tr Gamma^s Gamma'^(1-s) for s in [0, 1].  The
/// endpoints are the limits tr P_Gamma Gamma' (s = 0) and tr Gamma P_Gamma'
/// (s = 1) with P the support projector.
double chernoff_quantity(const IntensityOperator& a, const IntensityOperator& b, double s);

/// Chernoff quantity of the full Poisson states:
/// exp(-s N - (1-s) N' + C_s(Gamma, Gamma')).
double poisson_state_chernoff(const IntensityOperator& a, const IntensityOperator& b, double s);

/// sup over s in [0, 1] of s N + (1-s) N' - C_s(Gamma, Gamma').  Grid prescan
/// plus golden-section refinement to tol_s; ties prefer the endpoints.
DivergenceReport chernoff_distance(const IntensityOperator& a, const IntensityOperator& b,
                                   double tol_s = 1e-9);

/// D_s = [s N + (1-s) N' - C_s] / (s (1-s)) for s strictly inside (0, 1).
double alpha_divergence(const IntensityOperator& a, const IntensityOperator& b, double s);

/// D(Gamma || Gamma') = N' - N + tr Gamma (ln Gamma - ln Gamma'), with
/// 0 ln 0 = 0 on the kernel of Gamma.  +infinity when the support of Gamma
/// is not contained in the support of Gamma'.
double relative_entropy(const IntensityOperator& a, const IntensityOperator& b);

// -- Classical (per-bin) counterparts ---------------------------------------

/// C_s(Lambda, Lambda') = sum_j Lambda_j^s Lambda'_j^(1-s); endpoint
/// conventions restrict the sum to the support of the power-0 argument.
double classical_chernoff(const IntensityVector& a, const IntensityVector& b, double s);

/// Classical counterpart of fidelity: C_1/2 (the Bhattacharyya affinity).
double classical_fidelity(const IntensityVector& a, const IntensityVector& b);

/// N + N' - 2 C_1/2 = sum_j (sqrt(Lambda_j) - sqrt(Lambda'_j))^2.
double classical_bures_sq(const IntensityVector& a, const IntensityVector& b);

DivergenceReport classical_chernoff_distance(const IntensityVector& a, const IntensityVector& b,
                                             double tol_s = 1e-9);

double classical_alpha_divergence(const IntensityVector& a, const IntensityVector& b, double s);

/// D(Lambda || Lambda') = N' - N + sum_j Lambda_j ln(Lambda_j / Lambda'_j),
/// with 0 ln 0 = 0; +infinity when some Lambda_j > 0 has Lambda'_j = 0.
double classical_relative_entropy(const IntensityVector& a, const IntensityVector& b);

// -- Umbrella dispatch (used by the command-line front end) -----------------

DivergenceReport divergence_report(const IntensityOperator& a, const IntensityOperator& b,
                                   DivergenceKind kind, double s = 0.5, double tol_s = 1e-9);

DivergenceReport divergence_report(const IntensityVector& a, const IntensityVector& b,
                                   DivergenceKind kind, double s = 0.5, double tol_s = 1e-9);

}  // namespace pinfo
