// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pinfo/divergences.hpp"
#include "pinfo/estimation.hpp"

namespace pinfo {

/// Two incoherent-to-coherent point sources with mutual coherence gamma,
/// separated by theta, imaged through a Gaussian aperture psf
/// psi(x) = (2 pi)^(-1/4) exp(-x^2 / 4).  Each source contributes intensity
/// N0.  Estimation of theta is posed on the non-orthogonal basis
/// {psi_1, psi_2, d/dtheta psi_1, d/dtheta psi_2}.
struct ImagingConfig {
  double n0 = 1.0;
  std::vector<Complex> gamma_grid;
  std::vector<double> theta_grid;
  double delta_reg = 1e-13;
};

/// theta on [0.05, 8] step 0.05, gamma on [-1, 1] step 0.2, N0 = 1.
ImagingConfig default_imaging_config();

/// Overlap matrix of {psi_1, psi_2, psi_1', psi_2'} at separation theta.
/// All entries are Gaussian integrals in closed form.
HermitianMatrix gram_matrix(double theta);

/// Coefficient matrices of the intensity operator and its theta-derivative
/// on that basis.  They do not depend on theta; the geometry lives in the
/// Gram matrix.
std::pair<HermitianMatrix, HermitianMatrix> gamma_and_derivative(double n0, Complex gamma);

/// Total expected object count 2 N0 (1 + Re(gamma) exp(-theta^2 / 8)).
double expected_photon_number(double n0, Complex gamma, double theta);

struct ImagingSweepPoint {
  Complex gamma;
  double theta;
  double k_normalized;  // K / (N0 / 2)
};

/// Helstrom information of the separation across the grid, gamma-major,
/// normalized by N0 / 2.
std::vector<ImagingSweepPoint> helstrom_sweep(const ImagingConfig& config);

/// Intensity landed in position bins of width 0.1 spanning [-12, 12]
/// (midpoint rule): the classical record of an ideal direct imager.
IntensityVector direct_imaging_intensities(double n0, Complex gamma, double theta);

/// The same intensity operator embedded in an orthonormal Hermite-Gauss
/// ladder (exact expansion of displaced Gaussians, truncated at n_modes).
/// Gives the spectral-path counterpart of the Gram-basis computation.
Matrix hg_gamma_operator(double n0, Complex gamma, double theta, int n_modes = 32);

}  // namespace pinfo
