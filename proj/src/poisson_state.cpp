// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/poisson_state.hpp"

#include <cmath>
#include <sstream>

namespace pinfo {

DensityOperator::DensityOperator(PSDMatrix matrix, double tol_trace) : matrix_(std::move(matrix)) {
  const double tr = matrix_.trace();
  if (std::abs(tr - 1.0) > tol_trace) {
    std::ostringstream msg;
    msg << "trace " << tr << " is not 1 within " << tol_trace;
    throw Error(ErrorCode::BadInput, msg.str());
  }
}

IntensityOperator::IntensityOperator(PSDMatrix matrix)
    : matrix_(std::move(matrix)), total_(matrix_.trace()) {}

IntensityOperator IntensityOperator::from_matrix(const Matrix& a, double tol_herm,
                                                 double tol_psd) {
  return IntensityOperator(validate_psd(a, tol_herm, tol_psd));
}

IntensityOperator intensity_from_density(const DensityOperator& tau1, double n) {
  if (n < 0.0) {
    throw Error(ErrorCode::NegativeN, "expected object count must be >= 0");
  }
  // Scaling a unit-trace PSD matrix keeps it PSD; revalidation is cheap and
  // refreshes the cached spectrum at the new scale.
  return IntensityOperator(validate_psd(n * tau1.matrix()));
}

RareStateSpec::RareStateSpec(double epsilon_in, DensityOperator tau1_in, std::int64_t modes_in)
    : epsilon(epsilon_in), tau1(std::move(tau1_in)), modes(modes_in) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::BadInput, "occupation probability must lie in [0, 1]");
  }
  if (modes < 1) {
    throw Error(ErrorCode::BadInput, "mode count must be >= 1");
  }
}

DensityOperator single_mode_matrix(const RareStateSpec& spec) {
  const int d = spec.tau1.dim();
  Matrix m = Matrix::Zero(d + 1, d + 1);
  m(0, 0) = 1.0 - spec.epsilon;
  m.block(1, 1, d, d) = spec.epsilon * spec.tau1.matrix();
  return DensityOperator(validate_psd(m));
}

FockRepresentation fock_truncate(const IntensityOperator& gamma, double tail_bound) {
  if (!(tail_bound > 0.0)) {
    throw Error(ErrorCode::BadInput, "tail bound must be positive");
  }
  const double n = gamma.total();
  FockRepresentation rep;
  rep.total = n;
  rep.tail_bound = tail_bound;
  double w = std::exp(-n);
  rep.weights.push_back(w);
  int l = 0;
  const int cap = static_cast<int>(n + 20.0 * std::sqrt(n + 1.0) + 200.0);
  // Past the mode the weights decay faster than the geometric ratio
  // n / (l + 2), so the remaining mass after l is at most
  // w(l+1) / (1 - n / (l + 2)).  Stopping on this analytic bound keeps the
  // criterion sharp for bounds far below the resolution of an accumulated
  // 1 - cum, which saturates near the rounding unit.
  const auto tail_after = [n](double weight, int at) {
    return weight * (n / static_cast<double>(at + 1)) /
           (1.0 - n / static_cast<double>(at + 2));
  };
  while (l < cap && (static_cast<double>(l) < n || tail_after(w, l) > tail_bound)) {
    ++l;
    w *= n / static_cast<double>(l);
    rep.weights.push_back(w);
  }
  rep.l_max = l;
  return rep;
}

double fock_fidelity_series(const FockRepresentation& a, const FockRepresentation& b,
                            double gamma_fidelity) {
  const int l_max = std::min(a.l_max, b.l_max);
  double term = std::exp(-0.5 * (a.total + b.total));
  double sum = term;
  for (int l = 1; l <= l_max; ++l) {
    term *= gamma_fidelity / static_cast<double>(l);
    sum += term;
  }
  return sum;
}

}  // namespace pinfo
