// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "pinfo/poisson_state.hpp"
#include "pinfo/psd_core.hpp"

// Deterministic random fixtures.  Built on SplitMix64 + Box-Muller so the
// same seed yields the same instances on every platform, unlike the
// distributions in <random>.
namespace testsupport {

using pinfo::Complex;
using pinfo::Matrix;
using pinfo::RealVector;
using pinfo::SplitMix64;

inline double uniform(SplitMix64& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_double();
}

inline double normal(SplitMix64& rng) {
  const double u1 = 1.0 - rng.next_double();  // keep log() away from 0
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline Complex cnormal(SplitMix64& rng) {
  const double re = normal(rng);
  const double im = normal(rng);
  return Complex(re, im) / std::sqrt(2.0);
}

inline Matrix random_complex(SplitMix64& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = cnormal(rng);
  }
  return m;
}

inline Matrix random_hermitian(SplitMix64& rng, int d, double scale = 1.0) {
  const Matrix a = random_complex(rng, d, d);
  return scale * 0.5 * (a + a.adjoint());
}

/// Full-rank PSD matrix with a floor on the smallest eigenvalue.
inline Matrix random_psd(SplitMix64& rng, int d, double ridge = 0.05) {
  const Matrix a = random_complex(rng, d, d);
  return a * a.adjoint() / static_cast<double>(d) +
         ridge * Matrix::Identity(d, d);
}

inline Matrix random_unitary(SplitMix64& rng, int d) {
  const Matrix a = random_complex(rng, d, d);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(d, d);
}

/// Random full-rank intensity operator with trace drawn from [n_lo, n_hi].
inline pinfo::IntensityOperator random_intensity(SplitMix64& rng, int d, double n_lo,
                                                 double n_hi) {
  Matrix m = random_psd(rng, d);
  m *= uniform(rng, n_lo, n_hi) / m.trace().real();
  return pinfo::IntensityOperator::from_matrix(m);
}

/// POVM with `outcomes` full-rank elements: E_j = S^{-1/2} A_j S^{-1/2}.
inline std::vector<Matrix> random_povm(SplitMix64& rng, int d, int outcomes) {
  std::vector<Matrix> parts;
  Matrix total = Matrix::Zero(d, d);
  for (int j = 0; j < outcomes; ++j) {
    parts.push_back(random_psd(rng, d));
    total += parts.back();
  }
  const Matrix inv_sqrt = pinfo::apply_spectral_function(
      pinfo::validate_psd(total), [](double x) { return 1.0 / std::sqrt(x); }, true);
  for (Matrix& e : parts) {
    e = inv_sqrt * e * inv_sqrt;
    e = 0.5 * (e + e.adjoint());
  }
  return parts;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Nested-square-root fidelity tr sqrt(sqrt(A) B sqrt(A)); the independent
/// cross-check route for the product-eigenvalue implementation.
inline double fidelity_nested(const pinfo::IntensityOperator& a,
                              const pinfo::IntensityOperator& b) {
  const Matrix sqrt_a =
      pinfo::apply_spectral_function(a.psd(), [](double x) { return std::sqrt(x); }, true);
  Matrix inner = sqrt_a * b.matrix() * sqrt_a;
  inner = 0.5 * (inner + inner.adjoint());
  const pinfo::PSDMatrix inner_psd = pinfo::validate_psd(inner, 1e-8, 1e-8);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < inner_psd.spectrum().eigenvalues.size(); ++i) {
    sum += std::sqrt(inner_psd.spectrum().eigenvalues[i]);
  }
  return sum;
}

}  // namespace testsupport
