// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "pinfo/psd_core.hpp"

namespace pinfo {

/// Unit-trace PSD matrix (a normalized state of one object).
class DensityOperator {
 public:
  explicit DensityOperator(PSDMatrix matrix, double tol_trace = 1e-10);

  int dim() const { return matrix_.dim(); }
  const PSDMatrix& psd() const { return matrix_; }
  const Matrix& matrix() const { return matrix_.matrix(); }

 private:
  PSDMatrix matrix_;
};

/// Intensity operator of a Poisson point-process state: a PSD matrix whose
/// trace N is the expected object count.  N = 0 (the vacuum process) is valid.
class IntensityOperator {
 public:
  explicit IntensityOperator(PSDMatrix matrix);

  /// Parse-and-validate shortcut for raw matrix input.
  static IntensityOperator from_matrix(const Matrix& a,
                                       double tol_herm = Tolerances{}.herm,
                                       double tol_psd = Tolerances{}.psd);

  int dim() const { return matrix_.dim(); }
  double total() const { return total_; }
  const PSDMatrix& psd() const { return matrix_; }
  const Matrix& matrix() const { return matrix_.matrix(); }

 private:
  PSDMatrix matrix_;
  double total_;
};

/// Gamma = N * tau1.  N < 0 raises NegativeN.
IntensityOperator intensity_from_density(const DensityOperator& tau1, double n);

/// One mode of a rare-object source: with probability 1 - epsilon the mode is
/// empty, with probability epsilon it carries state tau1.  A collection of
/// modes copies of this single-mode state approaches the Poisson process with
/// intensity Gamma = modes * epsilon * tau1.
struct RareStateSpec {
  double epsilon = 0.0;
  DensityOperator tau1;
  std::int64_t modes = 1;

  RareStateSpec(double epsilon_in, DensityOperator tau1_in, std::int64_t modes_in);

  double total() const { return epsilon * static_cast<double>(modes); }
};

/// (1 - epsilon) oplus epsilon * tau1 on a (d + 1)-dimensional space whose
/// index 0 is the vacuum.  Off-block entries are exact zeros.
DensityOperator single_mode_matrix(const RareStateSpec& spec);

/// Occupation-number truncation of the Poisson state: weights[l] is the
/// probability of l objects, l <= l_max.
struct FockRepresentation {
  double total = 0.0;
  int l_max = 0;
  std::vector<double> weights;
  double tail_bound = 0.0;
};

/// Truncation depth chosen so the neglected Poisson tail mass is
/// <= tail_bound, judged by an analytic geometric bound on the tail.
FockRepresentation fock_truncate(const IntensityOperator& gamma, double tail_bound = 1e-12);

/// Fidelity between two Poisson states evaluated term by term in the
/// occupation-number representation, truncated at min(a.l_max, b.l_max).
/// gamma_fidelity is F(Gamma, Gamma') at the intensity level; the series
/// sum_l exp(-(N + N')/2) F^l / l! converges to exp(-(N + N')/2 + F).
double fock_fidelity_series(const FockRepresentation& a, const FockRepresentation& b,
                            double gamma_fidelity);

}  // namespace pinfo
