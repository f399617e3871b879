// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/divergences.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pinfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_dim(int da, int db) {
  if (da != db) {
    std::ostringstream msg;
    msg << "operator dimensions differ: " << da << " vs " << db;
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

void require_same_length(int la, int lb) {
  if (la != lb) {
    std::ostringstream msg;
    msg << "vector lengths differ: " << la << " vs " << lb;
    throw Error(ErrorCode::LengthMismatch, msg.str());
  }
}

double clamp_nonnegative(double v) { return v < 0.0 ? 0.0 : v; }

/// Maximizes a unimodal-enough objective on [0, 1]: 101-point prescan,
/// golden-section refinement of the best bracket, endpoint preference on
/// ties.  Returns (s_star, value).
std::pair<double, double> maximize_on_unit_interval(const std::function<double(double)>& f,
                                                    double tol_s) {
  constexpr int kGrid = 101;
  double best_s = 0.0;
  double best_v = -kInf;
  for (int i = 0; i < kGrid; ++i) {
    const double s = static_cast<double>(i) / (kGrid - 1);
    const double v = f(s);
    if (v > best_v) {
      best_v = v;
      best_s = s;
    }
  }
  const double step = 1.0 / (kGrid - 1);
  double lo = std::max(0.0, best_s - step);
  double hi = std::min(1.0, best_s + step);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol_s) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  double s_star = 0.5 * (lo + hi);
  double v_star = f(s_star);
  if (best_v > v_star) {
    s_star = best_s;
    v_star = best_v;
  }
  // A flat objective should report a boundary point, not an arbitrary
  // interior one.
  const double tie = 1e-12 * (1.0 + std::abs(v_star));
  const double v0 = f(0.0);
  const double v1 = f(1.0);
  if (v0 >= v_star - tie) return {0.0, v0};
  if (v1 >= v_star - tie) return {1.0, v1};
  return {s_star, v_star};
}

}  // namespace

IntensityVector::IntensityVector(RealVector values) : values_(std::move(values)) {
  const double scale = values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0;
  const double floor = -1e-12 * std::max(scale, 1.0);
  for (Eigen::Index j = 0; j < values_.size(); ++j) {
    if (values_[j] < floor) {
      std::ostringstream msg;
      msg << "intensity " << values_[j] << " at bin " << j << " is negative";
      throw Error(ErrorCode::NegativeIntensity, msg.str());
    }
    if (values_[j] < 0.0) values_[j] = 0.0;
  }
  total_ = values_.sum();
}

const char* to_string(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::Fidelity: return "fidelity";
    case DivergenceKind::BuresSq: return "bures";
    case DivergenceKind::ChernoffS: return "chernoff";
    case DivergenceKind::ChernoffDistance: return "chernoff-distance";
    case DivergenceKind::AlphaDiv: return "alpha";
    case DivergenceKind::RelEntropy: return "kl";
  }
  return "unknown";
}

double fidelity(const IntensityOperator& a, const IntensityOperator& b) {
  require_same_dim(a.dim(), b.dim());
  // tr sqrt(sqrt(A) B sqrt(A)) equals the sum of square roots of the
  // eigenvalues of A B, which are real nonnegative up to rounding.
  Eigen::ComplexEigenSolver<Matrix> solver(a.matrix() * b.matrix(), false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::BadInput, "product eigendecomposition failed to converge");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    sum += std::sqrt(clamp_nonnegative(solver.eigenvalues()[i].real()));
  }
  return sum;
}

double bures_sq(const IntensityOperator& a, const IntensityOperator& b) {
  return clamp_nonnegative(a.total() + b.total() - 2.0 * fidelity(a, b));
}

double poisson_state_fidelity(const IntensityOperator& a, const IntensityOperator& b) {
  return std::exp(-0.5 * bures_sq(a, b));
}

double chernoff_quantity(const IntensityOperator& a, const IntensityOperator& b, double s) {
  require_same_dim(a.dim(), b.dim());
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::SOutOfRange, "s must lie in [0, 1]");
  }
  Matrix as, bs;
  if (s == 0.0) {
    as = support_projector(a.psd());
    bs = b.matrix();
  } else if (s == 1.0) {
    as = a.matrix();
    bs = support_projector(b.psd());
  } else {
    as = apply_spectral_function(a.psd(), [s](double x) { return std::pow(x, s); }, true);
    bs = apply_spectral_function(b.psd(), [s](double x) { return std::pow(x, 1.0 - s); }, true);
  }
  return clamp_nonnegative((as * bs).trace().real());
}

double poisson_state_chernoff(const IntensityOperator& a, const IntensityOperator& b, double s) {
  return std::exp(-s * a.total() - (1.0 - s) * b.total() + chernoff_quantity(a, b, s));
}

DivergenceReport chernoff_distance(const IntensityOperator& a, const IntensityOperator& b,
                                   double tol_s) {
  require_same_dim(a.dim(), b.dim());
  const double na = a.total();
  const double nb = b.total();
  auto objective = [&](double s) {
    return s * na + (1.0 - s) * nb - chernoff_quantity(a, b, s);
  };
  auto [s_star, value] = maximize_on_unit_interval(objective, tol_s);
  return {DivergenceKind::ChernoffDistance, clamp_nonnegative(value), s_star};
}

double alpha_divergence(const IntensityOperator& a, const IntensityOperator& b, double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw Error(ErrorCode::SOutOfRange, "s must lie strictly inside (0, 1)");
  }
  const double num = s * a.total() + (1.0 - s) * b.total() - chernoff_quantity(a, b, s);
  return clamp_nonnegative(num) / (s * (1.0 - s));
}

double relative_entropy(const IntensityOperator& a, const IntensityOperator& b) {
  require_same_dim(a.dim(), b.dim());
  const double na = a.total();
  const double nb = b.total();
  if (na > 0.0) {
    // Mass of Gamma outside the support of Gamma' forces divergence.
    const Matrix proj = support_projector(b.psd());
    const double leak = clamp_nonnegative(na - (proj * a.matrix()).trace().real());
    if (leak > 1e-10 * na) return kInf;
  }
  double tr_a_log_a = 0.0;
  const SpectralDecomposition& sd = a.psd().spectrum();
  const double cutoff = Tolerances{}.supp * a.psd().lambda_max();
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const double lam = sd.eigenvalues[i];
    if (lam > cutoff) tr_a_log_a += lam * std::log(lam);
  }
  const Matrix log_b = apply_spectral_function(b.psd(), [](double x) { return std::log(x); }, true);
  const double tr_a_log_b = (a.matrix() * log_b).trace().real();
  return clamp_nonnegative(nb - na + tr_a_log_a - tr_a_log_b);
}

double classical_chernoff(const IntensityVector& a, const IntensityVector& b, double s) {
  require_same_length(a.size(), b.size());
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::SOutOfRange, "s must lie in [0, 1]");
  }
  double sum = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    if (s == 0.0) {
      if (a[j] > 0.0) sum += b[j];
    } else if (s == 1.0) {
      if (b[j] > 0.0) sum += a[j];
    } else if (a[j] > 0.0 && b[j] > 0.0) {
      sum += std::pow(a[j], s) * std::pow(b[j], 1.0 - s);
    }
  }
  return sum;
}

double classical_fidelity(const IntensityVector& a, const IntensityVector& b) {
  return classical_chernoff(a, b, 0.5);
}

double classical_bures_sq(const IntensityVector& a, const IntensityVector& b) {
  return clamp_nonnegative(a.total() + b.total() - 2.0 * classical_fidelity(a, b));
}

DivergenceReport classical_chernoff_distance(const IntensityVector& a, const IntensityVector& b,
                                             double tol_s) {
  require_same_length(a.size(), b.size());
  const double na = a.total();
  const double nb = b.total();
  auto objective = [&](double s) {
    return s * na + (1.0 - s) * nb - classical_chernoff(a, b, s);
  };
  auto [s_star, value] = maximize_on_unit_interval(objective, tol_s);
  return {DivergenceKind::ChernoffDistance, clamp_nonnegative(value), s_star};
}

double classical_alpha_divergence(const IntensityVector& a, const IntensityVector& b, double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw Error(ErrorCode::SOutOfRange, "s must lie strictly inside (0, 1)");
  }
  const double num = s * a.total() + (1.0 - s) * b.total() - classical_chernoff(a, b, s);
  return clamp_nonnegative(num) / (s * (1.0 - s));
}

double classical_relative_entropy(const IntensityVector& a, const IntensityVector& b) {
  require_same_length(a.size(), b.size());
  double sum = b.total() - a.total();
  for (int j = 0; j < a.size(); ++j) {
    if (a[j] == 0.0) continue;  // 0 ln 0 contributes nothing
    if (b[j] == 0.0) return kInf;
    sum += a[j] * std::log(a[j] / b[j]);
  }
  return clamp_nonnegative(sum);
}

DivergenceReport divergence_report(const IntensityOperator& a, const IntensityOperator& b,
                                   DivergenceKind kind, double s, double tol_s) {
  switch (kind) {
    case DivergenceKind::Fidelity: return {kind, fidelity(a, b), {}};
    case DivergenceKind::BuresSq: return {kind, bures_sq(a, b), {}};
    case DivergenceKind::ChernoffS: return {kind, chernoff_quantity(a, b, s), {}};
    case DivergenceKind::ChernoffDistance: return chernoff_distance(a, b, tol_s);
    case DivergenceKind::AlphaDiv: return {kind, alpha_divergence(a, b, s), {}};
    case DivergenceKind::RelEntropy: return {kind, relative_entropy(a, b), {}};
  }
  throw Error(ErrorCode::BadInput, "unknown divergence kind");
}

DivergenceReport divergence_report(const IntensityVector& a, const IntensityVector& b,
                                   DivergenceKind kind, double s, double tol_s) {
  switch (kind) {
    case DivergenceKind::Fidelity: return {kind, classical_fidelity(a, b), {}};
    case DivergenceKind::BuresSq: return {kind, classical_bures_sq(a, b), {}};
    case DivergenceKind::ChernoffS: return {kind, classical_chernoff(a, b, s), {}};
    case DivergenceKind::ChernoffDistance: return classical_chernoff_distance(a, b, tol_s);
    case DivergenceKind::AlphaDiv: return {kind, classical_alpha_divergence(a, b, s), {}};
    case DivergenceKind::RelEntropy: return {kind, classical_relative_entropy(a, b), {}};
  }
  throw Error(ErrorCode::BadInput, "unknown divergence kind");
}

}  // namespace pinfo
