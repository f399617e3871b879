// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/imaging.hpp"

#include <cmath>
#include <numbers>

namespace pinfo {

namespace {

double psf(double x) {
  return std::pow(2.0 * std::numbers::pi, -0.25) * std::exp(-0.25 * x * x);
}

}  // namespace

ImagingConfig default_imaging_config() {
  ImagingConfig cfg;
  for (int i = 1; i <= 160; ++i) cfg.theta_grid.push_back(static_cast<double>(i) / 20.0);
  for (int k = 0; k <= 10; ++k) {
    cfg.gamma_grid.push_back(Complex(static_cast<double>(k - 5) / 5.0, 0.0));
  }
  return cfg;
}

HermitianMatrix gram_matrix(double theta) {
  const double e = std::exp(-theta * theta / 8.0);
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = g(1, 1) = 1.0;
  g(0, 1) = g(1, 0) = e;
  g(0, 3) = g(3, 0) = g(1, 2) = g(2, 1) = -(theta / 8.0) * e;
  g(2, 2) = g(3, 3) = 1.0 / 16.0;
  g(2, 3) = g(3, 2) = (theta * theta - 4.0) / 64.0 * e;
  return HermitianMatrix(std::move(g));
}

std::pair<HermitianMatrix, HermitianMatrix> gamma_and_derivative(double n0, Complex gamma) {
  Matrix gt = Matrix::Zero(4, 4);
  gt(0, 0) = gt(1, 1) = n0;
  gt(0, 1) = n0 * gamma;
  gt(1, 0) = n0 * std::conj(gamma);
  Matrix dt = Matrix::Zero(4, 4);
  dt(0, 2) = dt(2, 0) = n0;
  dt(1, 3) = dt(3, 1) = n0;
  dt(0, 3) = dt(2, 1) = n0 * gamma;
  dt(3, 0) = dt(1, 2) = n0 * std::conj(gamma);
  return {HermitianMatrix(std::move(gt)), HermitianMatrix(std::move(dt))};
}

double expected_photon_number(double n0, Complex gamma, double theta) {
  return 2.0 * n0 * (1.0 + gamma.real() * std::exp(-theta * theta / 8.0));
}

std::vector<ImagingSweepPoint> helstrom_sweep(const ImagingConfig& config) {
  std::vector<ImagingSweepPoint> points;
  points.reserve(config.gamma_grid.size() * config.theta_grid.size());
  for (const Complex& gamma : config.gamma_grid) {
    auto [gamma_t, delta_t] = gamma_and_derivative(config.n0, gamma);
    for (double theta : config.theta_grid) {
      GramBasisProblem problem(gram_matrix(theta), gamma_t, delta_t, config.delta_reg);
      const GramSolution sol = sld_gram(problem);
      points.push_back({gamma, theta, sol.k / (config.n0 / 2.0)});
    }
  }
  return points;
}

IntensityVector direct_imaging_intensities(double n0, Complex gamma, double theta) {
  constexpr double kLo = -12.0;
  constexpr double kWidth = 0.1;
  constexpr int kBins = 240;
  RealVector lambda(kBins);
  for (int j = 0; j < kBins; ++j) {
    const double x = kLo + kWidth * (static_cast<double>(j) + 0.5);
    const double p1 = psf(x + theta / 2.0);
    const double p2 = psf(x - theta / 2.0);
    lambda[j] = kWidth * n0 * (p1 * p1 + p2 * p2 + 2.0 * gamma.real() * p1 * p2);
  }
  return IntensityVector(std::move(lambda));
}

Matrix hg_gamma_operator(double n0, Complex gamma, double theta, int n_modes) {
  // A Gaussian displaced by +/- theta/2 expands over the Hermite-Gauss
  // ladder of the same envelope with coherent-state coefficients of
  // amplitude -/+ theta/4.
  Vector c1(n_modes), c2(n_modes);
  const double envelope = std::exp(-theta * theta / 32.0);
  double amp1 = 1.0, amp2 = 1.0;
  for (int n = 0; n < n_modes; ++n) {
    if (n > 0) {
      amp1 *= -theta / 4.0 / std::sqrt(static_cast<double>(n));
      amp2 *= theta / 4.0 / std::sqrt(static_cast<double>(n));
    }
    c1[n] = envelope * amp1;
    c2[n] = envelope * amp2;
  }
  Matrix g = n0 * (c1 * c1.adjoint() + c2 * c2.adjoint() + gamma * (c1 * c2.adjoint()) +
                   std::conj(gamma) * (c2 * c1.adjoint()));
  return 0.5 * (g + g.adjoint());
}

}  // namespace pinfo
