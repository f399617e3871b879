// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#include "pinfo/estimation.hpp"

#include <cmath>
#include <sstream>

namespace pinfo {

namespace {

Matrix central_difference(const ParamFamily& family, const RealVector& theta, int mu,
                          double fd_step) {
  const double h = fd_step * (std::abs(theta[mu]) + 1.0);
  RealVector up = theta;
  RealVector dn = theta;
  up[mu] += h;
  dn[mu] -= h;
  return (family.gamma_of(up) - family.gamma_of(dn)) / (2.0 * h);
}

}  // namespace

HelstromMatrix::HelstromMatrix(RealMatrix k) {
  if (k.rows() != k.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "information matrix must be square");
  }
  RealMatrix sym = 0.5 * (k + k.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
  RealVector lam = solver.eigenvalues();
  const double lam_max = std::max(lam.maxCoeff(), 0.0);
  const double floor = -1e-8 * lam_max;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < floor) {
      std::ostringstream msg;
      msg << "information eigenvalue " << lam[i] << " below " << floor;
      throw Error(ErrorCode::NegativeEigenvalue, msg.str());
    }
    if (lam[i] < 0.0) lam[i] = 0.0;
  }
  entries_ = solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().transpose();
  entries_ = 0.5 * (entries_ + entries_.transpose());
}

HermitianMatrix sld(const IntensityOperator& gamma, const HermitianMatrix& dgamma,
                    double tol_supp) {
  if (gamma.dim() != dgamma.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "gamma and dgamma dimensions differ");
  }
  const SpectralDecomposition& sd = gamma.psd().spectrum();
  const int n = gamma.dim();
  const double cutoff = tol_supp * gamma.psd().lambda_max();
  const Matrix dg_tilde = sd.eigenvectors.adjoint() * dgamma.entries() * sd.eigenvectors;
  const double dg_scale = std::max(dg_tilde.norm(), 1e-300);
  Matrix s_tilde = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double denom = sd.eigenvalues[j] + sd.eigenvalues[k];
      if (denom <= cutoff) {
        // Both eigenvalues vanish: the derivative must vanish there too.
        if (std::abs(dg_tilde(j, k)) > 1e-8 * dg_scale) {
          std::ostringstream msg;
          msg << "derivative weight " << std::abs(dg_tilde(j, k))
              << " on the kernel of gamma (eigenvalue pair " << j << "," << k << ")";
          throw Error(ErrorCode::DerivativeOutsideSupport, msg.str());
        }
        continue;
      }
      s_tilde(j, k) = 2.0 * dg_tilde(j, k) / denom;
    }
  }
  Matrix s = sd.eigenvectors * s_tilde * sd.eigenvectors.adjoint();
  return HermitianMatrix(0.5 * (s + s.adjoint()));
}

HelstromMatrix helstrom(const ParamFamily& family, const RealVector& theta, double fd_step) {
  if (!family.gamma_of) {
    throw Error(ErrorCode::BadInput, "family has no gamma_of callback");
  }
  if (theta.size() != family.theta.size()) {
    throw Error(ErrorCode::LengthMismatch, "theta length does not match the family");
  }
  const int q = family.q();
  IntensityOperator gamma = IntensityOperator::from_matrix(family.gamma_of(theta));
  std::vector<HermitianMatrix> slds;
  slds.reserve(q);
  for (int mu = 0; mu < q; ++mu) {
    Matrix dg = family.dgamma_of ? family.dgamma_of(theta, mu)
                                 : central_difference(family, theta, mu, fd_step);
    slds.push_back(sld(gamma, HermitianMatrix(0.5 * (dg + dg.adjoint()))));
  }
  RealMatrix k(q, q);
  for (int mu = 0; mu < q; ++mu) {
    for (int nu = mu; nu < q; ++nu) {
      const Matrix& smu = slds[mu].entries();
      const Matrix& snu = slds[nu].entries();
      const Matrix jordan = 0.5 * (smu * snu + snu * smu);
      k(mu, nu) = k(nu, mu) = (jordan * gamma.matrix()).trace().real();
    }
  }
  return HelstromMatrix(std::move(k));
}

Matrix solve_sylvester(const Matrix& a, const Matrix& c) {
  if (a.rows() != a.cols() || c.rows() != c.cols() || a.rows() != c.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "Sylvester operands must be square, same size");
  }
  const int n = static_cast<int>(a.rows());
  Eigen::ComplexSchur<Matrix> schur(a);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularLyapunov, "Schur reduction failed to converge");
  }
  const Matrix& u = schur.matrixU();
  const Matrix& t = schur.matrixT();
  Matrix rhs_all = u.adjoint() * c * u;
  const double t_scale = t.diagonal().cwiseAbs().maxCoeff();
  const double tol_div = 1e-12 * std::max(t_scale, 1e-300);
  const double rhs_norm = rhs_all.norm();
  Matrix y = Matrix::Zero(n, n);
  // Columns are solved back to front; each is an upper-triangular system in
  // T shifted by conj(T_kk).  A vanishing divisor is admissible only when
  // the corresponding component of the right-hand side vanishes as well;
  // "vanishes" is judged against the magnitudes accumulated into that
  // component, so cancellation noise from large intermediate entries does
  // not masquerade as inconsistency.
  for (int k = n - 1; k >= 0; --k) {
    Vector rhs = rhs_all.col(k);
    RealVector scale = rhs.cwiseAbs();
    for (int j = k + 1; j < n; ++j) {
      rhs -= std::conj(t(k, j)) * y.col(j);
      scale += std::abs(t(k, j)) * y.col(j).cwiseAbs();
    }
    const Complex shift = std::conj(t(k, k));
    for (int i = n - 1; i >= 0; --i) {
      Complex acc = rhs[i];
      double acc_scale = scale[i];
      for (int j = i + 1; j < n; ++j) {
        const Complex term = t(i, j) * y(j, k);
        acc -= term;
        acc_scale += std::abs(term);
      }
      const Complex divisor = t(i, i) + shift;
      if (std::abs(divisor) <= tol_div) {
        if (std::abs(acc) > 1e-8 * std::max(acc_scale, rhs_norm)) {
          throw Error(ErrorCode::SingularLyapunov,
                      "equation is inconsistent on a null pair of the coefficient spectrum");
        }
        y(i, k) = 0.0;
      } else {
        y(i, k) = acc / divisor;
      }
    }
  }
  return u * y * u.adjoint();
}

GramBasisProblem::GramBasisProblem(HermitianMatrix gram_in, HermitianMatrix gamma_t_in,
                                   HermitianMatrix delta_t_in, double delta_reg_in)
    : gram(std::move(gram_in)),
      gamma_t(std::move(gamma_t_in)),
      delta_t(std::move(delta_t_in)),
      delta_reg(delta_reg_in) {
  if (gram.dim() != gamma_t.dim() || gram.dim() != delta_t.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "Gram, gamma_t, delta_t dimensions differ");
  }
  if (!(delta_reg > 0.0)) {
    throw Error(ErrorCode::BadInput, "delta_reg must be positive");
  }
  // The basis must be admissible: Gram matrices are PSD by definition.
  PSDMatrix::validate(gram);
}

GramSolution sld_gram(const GramBasisProblem& problem) {
  const int n = problem.gram.dim();
  // Conjugate by G^(1/2): with X = G^(1/2) S_t G^(1/2) the equation becomes
  //   A X + X A = C,  A = G^(1/2) Gamma G^(1/2),  C = 2 G^(1/2) Delta G^(1/2),
  // a Lyapunov problem with a Hermitian PSD coefficient, solved exactly on
  // A's eigenpairs.  The metric damps the transformed right-hand side where
  // its own spectrum is weak, so the unpopulated directions enter with
  // correspondingly negligible data.
  const PSDMatrix gram_psd = PSDMatrix::validate(problem.gram);
  const Matrix root =
      apply_spectral_function(gram_psd, [](double x) { return std::sqrt(x); }, true);
  const Matrix a = root * problem.gamma_t.entries() * root;
  const Matrix c = 2.0 * (root * problem.delta_t.entries() * root);
  const SpectralDecomposition spec = spectral_decompose(HermitianMatrix(a));
  const RealVector& alpha = spec.eigenvalues;
  const Matrix& v = spec.eigenvectors;
  // delta_reg draws the line between populated directions and the ones the
  // operator leaves empty: spectral weight below delta_reg (measured in the
  // Gram metric, with a floor at the rounding noise of the spectrum) counts
  // as unpopulated.  Those pairs are deflated rather than inverted; an
  // additive lift would instead perturb every well-conditioned mode at first
  // order in delta_reg, making the result track the regularizer.  Any
  // significant derivative data on a deflated pair is a genuine support
  // violation.
  const double alpha_max = std::max(alpha.maxCoeff(), 0.0);
  const double cut = std::max(problem.delta_reg * gram_psd.lambda_max(), 1e-12 * alpha_max);
  const Matrix c_eig = v.adjoint() * c * v;
  const double c_scale = c_eig.norm();
  Matrix x_eig = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double denom = alpha[i] + alpha[j];
      if (denom > cut) {
        x_eig(i, j) = c_eig(i, j) / denom;
      } else if (std::abs(c_eig(i, j)) > 1e-6 * c_scale) {
        throw Error(ErrorCode::SingularLyapunov,
                    "derivative carries weight on a null pair of the operator spectrum");
      }
    }
  }
  const Matrix x_raw = v * x_eig * v.adjoint();
  const Matrix x = 0.5 * (x_raw + x_raw.adjoint());
  // k = tr(G S_t G Delta_t) collapses to tr(X C) / 2: no inverse metric
  // enters the information value.
  const Complex k = 0.5 * (x * c).trace();
  if (std::abs(k.imag()) > 1e-8 * std::max(1.0, std::abs(k.real()))) {
    throw Error(ErrorCode::SingularLyapunov, "information trace has a non-real component");
  }
  // Coefficients of the SLD itself need the support pseudo-inverse of the
  // metric; components G cannot see are pinned to zero.
  const Matrix root_inv = apply_spectral_function(
      gram_psd, [](double x) { return 1.0 / std::sqrt(x); }, true);
  const Matrix s = root_inv * x * root_inv;
  Matrix s_herm = 0.5 * (s + s.adjoint());
  return {HermitianMatrix(std::move(s_herm)), k.real()};
}

RealMatrix fisher_poisson(const IntensityVector& lambda, const RealMatrix& dlambda) {
  if (dlambda.rows() != lambda.size()) {
    throw Error(ErrorCode::LengthMismatch, "derivative rows must match the bin count");
  }
  const int q = static_cast<int>(dlambda.cols());
  const double dscale = dlambda.size() ? std::max(dlambda.cwiseAbs().maxCoeff(), 1.0) : 1.0;
  RealMatrix j = RealMatrix::Zero(q, q);
  for (int bin = 0; bin < lambda.size(); ++bin) {
    if (lambda[bin] == 0.0) {
      if (dlambda.row(bin).cwiseAbs().maxCoeff() > 1e-10 * dscale) {
        std::ostringstream msg;
        msg << "bin " << bin << " has zero intensity but a nonzero derivative";
        throw Error(ErrorCode::ZeroIntensityWithDerivative, msg.str());
      }
      continue;
    }
    j += dlambda.row(bin).transpose() * dlambda.row(bin) / lambda[bin];
  }
  return j;
}

}  // namespace pinfo
