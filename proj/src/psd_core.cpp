// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/psd_core.hpp"

#include <cmath>
#include <sstream>

namespace pinfo {

bool is_hermitian(const Matrix& a, double tol_herm) {
  if (a.rows() != a.cols()) return false;
  double scale = std::max(a.norm(), 1.0);
  return (a - a.adjoint()).norm() <= tol_herm * scale;
}

HermitianMatrix::HermitianMatrix(Matrix entries, double tol_herm) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorCode::NotHermitian, "matrix is not square");
  }
  if (!is_hermitian(entries, tol_herm)) {
    std::ostringstream msg;
    msg << "asymmetry " << (entries - entries.adjoint()).norm() << " exceeds tolerance";
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
  entries_ = 0.5 * (entries + entries.adjoint());
}

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

Matrix SpectralDecomposition::map(const std::function<double(double)>& f) const {
  RealVector mapped(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) mapped[i] = f(eigenvalues[i]);
  return eigenvectors * mapped.asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::BadInput, "eigendecomposition failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

PSDMatrix::PSDMatrix(Matrix entries, SpectralDecomposition spectrum)
    : entries_(std::move(entries)), spectrum_(std::move(spectrum)) {
  trace_ = entries_.trace().real();
}

PSDMatrix PSDMatrix::validate(const HermitianMatrix& h, double tol_psd) {
  SpectralDecomposition sd = spectral_decompose(h);
  const double lam_max = sd.eigenvalues.size() ? sd.eigenvalues.maxCoeff() : 0.0;
  const double floor = -tol_psd * std::max(lam_max, 0.0);
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    if (sd.eigenvalues[i] < floor) {
      std::ostringstream msg;
      msg << "eigenvalue " << sd.eigenvalues[i] << " below -tol_psd * lambda_max = " << floor;
      throw Error(ErrorCode::NegativeEigenvalue, msg.str());
    }
    if (sd.eigenvalues[i] < 0.0) sd.eigenvalues[i] = 0.0;
  }
  return PSDMatrix(h.entries(), std::move(sd));
}

double PSDMatrix::lambda_max() const {
  return spectrum_.eigenvalues.size() ? spectrum_.eigenvalues.maxCoeff() : 0.0;
}

std::vector<int> PSDMatrix::support(double tol_supp) const {
  const double cutoff = tol_supp * lambda_max();
  std::vector<int> idx;
  for (Eigen::Index i = 0; i < spectrum_.eigenvalues.size(); ++i) {
    if (spectrum_.eigenvalues[i] > cutoff) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

PSDMatrix validate_psd(const Matrix& a, double tol_herm, double tol_psd) {
  return PSDMatrix::validate(HermitianMatrix(a, tol_herm), tol_psd);
}

Matrix apply_spectral_function(const PSDMatrix& p, const std::function<double(double)>& f,
                               bool on_support_only, double tol_supp) {
  const SpectralDecomposition& sd = p.spectrum();
  const double cutoff = tol_supp * p.lambda_max();
  RealVector mapped = RealVector::Zero(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const double lam = sd.eigenvalues[i];
    if (on_support_only && lam <= cutoff) continue;
    const double v = f(lam);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "f(" << lam << ") is not finite; pass on_support_only for functions "
          << "undefined at clipped eigenvalues";
      throw Error(ErrorCode::FunctionUndefined, msg.str());
    }
    mapped[i] = v;
  }
  return sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.adjoint();
}

Matrix support_projector(const PSDMatrix& p, double tol_supp) {
  return apply_spectral_function(
      p, [](double) { return 1.0; }, true, tol_supp);
}

}  // namespace pinfo
