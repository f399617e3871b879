// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "pinfo/common.hpp"

namespace pinfo {

/// True when ||A - A^H|| <= tol * max(||A||, 1), Frobenius norms.
bool is_hermitian(const Matrix& a, double tol_herm = Tolerances{}.herm);

/// Validated Hermitian matrix.  Construction checks hermiticity within
/// tol_herm and stores the exactly Hermitian part (A + A^H)/2 so downstream
/// arithmetic never re-accumulates the asymmetry.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix entries, double tol_herm = Tolerances{}.herm);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

/// Eigensystem of a Hermitian matrix.  Eigenvalues ascending, eigenvector
/// columns orthonormal, reconstruct() == V diag(lambda) V^H.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const;

  /// V diag(f(lambda)) V^H with f applied to every eigenvalue.
  Matrix map(const std::function<double(double)>& f) const;
};

SpectralDecomposition spectral_decompose(const HermitianMatrix& h);

/// Positive semidefinite matrix with its spectrum cached at validation time.
/// Eigenvalues in [-tol_psd * lambda_max, 0) are clipped to zero; anything
/// below that bound raises NegativeEigenvalue.
class PSDMatrix {
 public:
  static PSDMatrix validate(const HermitianMatrix& h, double tol_psd = Tolerances{}.psd);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  double trace() const { return trace_; }
  double lambda_max() const;

  /// Indices of eigenvalues above tol_supp * lambda_max.
  std::vector<int> support(double tol_supp = Tolerances{}.supp) const;

 private:
  PSDMatrix(Matrix entries, SpectralDecomposition spectrum);

  Matrix entries_;
  SpectralDecomposition spectrum_;
  double trace_;
};

/// Convenience: hermiticity check plus PSD validation in one call.
PSDMatrix validate_psd(const Matrix& a, double tol_herm = Tolerances{}.herm,
                       double tol_psd = Tolerances{}.psd);

/// V f(Lambda) V^H on the cached spectrum.  With on_support_only the
/// function is applied only to eigenvalues above tol_supp * lambda_max and
/// the rest map to zero; without it f must be finite at every (clipped)
/// eigenvalue or FunctionUndefined is raised.
Matrix apply_spectral_function(const PSDMatrix& p, const std::function<double(double)>& f,
                               bool on_support_only, double tol_supp = Tolerances{}.supp);

/// Orthogonal projector onto the support subspace.
Matrix support_projector(const PSDMatrix& p, double tol_supp = Tolerances{}.supp);

}  // namespace pinfo
