// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pinfo/divergences.hpp"
#include "pinfo/estimation.hpp"
#include "pinfo/poisson_state.hpp"

namespace pinfo {

/// Exact divergences of M identical rare modes, computed at the single-mode
/// level and raised to the power M (fidelity, Chernoff) or scaled by M
/// (relative entropy).  These converge to the Poisson closed forms at rate
/// 1/M and serve as an independent check of the limit formulas.
struct FiniteMQuantities {
  double fidelity_m = 0.0;
  double chernoff_m = 0.0;
  double rel_entropy_m = 0.0;
  std::string note;
};

FiniteMQuantities finite_m_quantities(const RareStateSpec& a, const RareStateSpec& b,
                                      double s = 0.5);

/// Rare-object family for finite-M estimation: theta -> (N(theta),
/// tau1(theta)) with occupation epsilon = N / M per mode.
struct RareFamily {
  RealVector theta;
  std::function<double(const RealVector&)> n_of;
  std::function<Matrix(const RealVector&)> tau1_of;

  int q() const { return static_cast<int>(theta.size()); }
};

/// Helstrom information of M modes: the object-sector term
/// tr[(S_mu S_nu + S_nu S_mu)/2 Gamma] with Gamma = N tau1, plus the vacuum
/// occupation term dN_mu dN_nu / (M (1 - epsilon)) that vanishes as M grows.
RealMatrix finite_m_helstrom(const RareFamily& family, const RealVector& theta, std::int64_t m,
                             double fd_step = 1e-5);

enum class SweepKind { Fidelity, Chernoff, RelEntropy, Helstrom };

const char* to_string(SweepKind kind);

struct SweepRow {
  std::int64_t m = 0;
  double finite_value = 0.0;
  double limit_value = 0.0;
  double abs_error = 0.0;
};

/// Finite-M value vs Poisson limit across m_list for the pair (Gamma_a,
/// Gamma_b); rare-state specs use epsilon = N / M.  For Helstrom the scaling
/// family theta -> theta * Gamma_a at theta = 1 is swept, with the limit
/// given by the intensity-level information.
std::vector<SweepRow> convergence_sweep(const IntensityOperator& gamma_a,
                                        const IntensityOperator& gamma_b, SweepKind kind,
                                        const std::vector<std::int64_t>& m_list, double s = 0.5);

}  // namespace pinfo
