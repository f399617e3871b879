// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pinfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// x^M via exp(M log1p(x - 1)): accurate when x is close to 1, which is the
/// regime every large-M sweep lives in.
double pow_m(double x, std::int64_t m) {
  if (x <= 0.0) return 0.0;
  return std::exp(static_cast<double>(m) * std::log1p(x - 1.0));
}

IntensityOperator unit_intensity(const DensityOperator& tau) {
  return IntensityOperator(tau.psd());
}

DensityOperator density_from_matrix(const Matrix& m) {
  return DensityOperator(validate_psd(0.5 * (m + m.adjoint())));
}

}  // namespace

const char* to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::Fidelity: return "fidelity";
    case SweepKind::Chernoff: return "chernoff";
    case SweepKind::RelEntropy: return "kl";
    case SweepKind::Helstrom: return "helstrom";
  }
  return "unknown";
}

FiniteMQuantities finite_m_quantities(const RareStateSpec& a, const RareStateSpec& b, double s) {
  if (a.modes != b.modes) {
    std::ostringstream msg;
    msg << "mode counts differ: " << a.modes << " vs " << b.modes;
    throw Error(ErrorCode::ModeCountMismatch, msg.str());
  }
  if (a.tau1.dim() != b.tau1.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "object-state dimensions differ");
  }
  const IntensityOperator tau_a = unit_intensity(single_mode_matrix(a));
  const IntensityOperator tau_b = unit_intensity(single_mode_matrix(b));
  FiniteMQuantities out;
  out.fidelity_m = pow_m(fidelity(tau_a, tau_b), a.modes);
  out.chernoff_m = pow_m(chernoff_quantity(tau_a, tau_b, s), a.modes);
  const double d1 = relative_entropy(tau_a, tau_b);
  if (std::isinf(d1)) {
    out.rel_entropy_m = kInf;
    out.note = "single-mode support violation; relative entropy diverges";
  } else {
    out.rel_entropy_m = static_cast<double>(a.modes) * d1;
  }
  return out;
}

RealMatrix finite_m_helstrom(const RareFamily& family, const RealVector& theta, std::int64_t m,
                             double fd_step) {
  if (!family.n_of || !family.tau1_of) {
    throw Error(ErrorCode::BadInput, "rare family needs n_of and tau1_of callbacks");
  }
  if (theta.size() != family.theta.size()) {
    throw Error(ErrorCode::LengthMismatch, "theta length does not match the family");
  }
  if (m < 1) {
    throw Error(ErrorCode::BadInput, "mode count must be >= 1");
  }
  const int q = family.q();
  const double n0 = family.n_of(theta);
  const double eps = n0 / static_cast<double>(m);
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::BadInput, "N / M must lie in [0, 1) for a rare family");
  }

  // Object sector: the ordinary information of Gamma(theta) = N tau1.
  ParamFamily gamma_family;
  gamma_family.theta = family.theta;
  gamma_family.gamma_of = [&family](const RealVector& th) {
    // Materialize before returning: the product expression must not outlive
    // the temporary returned by tau1_of.
    return Matrix(family.n_of(th) * family.tau1_of(th));
  };
  const RealMatrix k_object = helstrom(gamma_family, theta, fd_step).entries();

  // Vacuum sector: a Bernoulli occupation with probability epsilon per mode
  // contributes dN_mu dN_nu / (M (1 - epsilon)).
  RealVector dn(q);
  for (int mu = 0; mu < q; ++mu) {
    const double h = fd_step * (std::abs(theta[mu]) + 1.0);
    RealVector up = theta;
    RealVector dn_th = theta;
    up[mu] += h;
    dn_th[mu] -= h;
    dn[mu] = (family.n_of(up) - family.n_of(dn_th)) / (2.0 * h);
  }
  const double vacuum_scale = 1.0 / (static_cast<double>(m) * (1.0 - eps));
  return k_object + vacuum_scale * (dn * dn.transpose());
}

std::vector<SweepRow> convergence_sweep(const IntensityOperator& gamma_a,
                                        const IntensityOperator& gamma_b, SweepKind kind,
                                        const std::vector<std::int64_t>& m_list, double s) {
  if (gamma_a.dim() != gamma_b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operator dimensions differ");
  }
  const double na = gamma_a.total();
  const double nb = gamma_b.total();
  const int d = gamma_a.dim();

  const Matrix tau1_a = na > 0.0 ? Matrix(gamma_a.matrix() / na)
                                 : Matrix(Matrix::Identity(d, d) / static_cast<double>(d));
  const Matrix tau1_b = nb > 0.0 ? Matrix(gamma_b.matrix() / nb)
                                 : Matrix(Matrix::Identity(d, d) / static_cast<double>(d));

  double limit = 0.0;
  RealMatrix k_limit;
  switch (kind) {
    case SweepKind::Fidelity: limit = poisson_state_fidelity(gamma_a, gamma_b); break;
    case SweepKind::Chernoff: limit = poisson_state_chernoff(gamma_a, gamma_b, s); break;
    case SweepKind::RelEntropy: limit = relative_entropy(gamma_a, gamma_b); break;
    case SweepKind::Helstrom: {
      ParamFamily scaling;
      scaling.theta = RealVector::Constant(1, 1.0);
      const Matrix base = gamma_a.matrix();
      scaling.gamma_of = [base](const RealVector& th) { return Matrix(th[0] * base); };
      scaling.dgamma_of = [base](const RealVector&, int) { return base; };
      limit = helstrom(scaling, scaling.theta).entries()(0, 0);
      break;
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(m_list.size());
  for (std::int64_t m : m_list) {
    if (m < 1) {
      throw Error(ErrorCode::BadInput, "mode counts must be >= 1");
    }
    SweepRow row;
    row.m = m;
    if (kind == SweepKind::Helstrom) {
      RareFamily fam;
      fam.theta = RealVector::Constant(1, 1.0);
      fam.n_of = [na](const RealVector& th) { return th[0] * na; };
      fam.tau1_of = [tau1_a](const RealVector&) { return tau1_a; };
      row.finite_value = finite_m_helstrom(fam, fam.theta, m)(0, 0);
    } else {
      const double eps_a = na / static_cast<double>(m);
      const double eps_b = nb / static_cast<double>(m);
      RareStateSpec spec_a(eps_a, density_from_matrix(tau1_a), m);
      RareStateSpec spec_b(eps_b, density_from_matrix(tau1_b), m);
      const FiniteMQuantities fm = finite_m_quantities(spec_a, spec_b, s);
      switch (kind) {
        case SweepKind::Fidelity: row.finite_value = fm.fidelity_m; break;
        case SweepKind::Chernoff: row.finite_value = fm.chernoff_m; break;
        default: row.finite_value = fm.rel_entropy_m; break;
      }
    }
    row.limit_value = limit;
    if (std::isinf(row.finite_value) && std::isinf(limit)) {
      row.abs_error = 0.0;
    } else {
      row.abs_error = std::abs(row.finite_value - limit);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pinfo
