// Copyright 2026 the poisson-info developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "pinfo/divergences.hpp"
#include "pinfo/poisson_state.hpp"

namespace pinfo {

/// Differentiable family theta -> Gamma(theta).  theta is the reference
/// point and fixes the parameter count q.  dgamma_of, when set, returns the
/// analytic partial derivative for one parameter index; otherwise central
/// differences with step fd_step * (|theta_mu| + 1) are used.
struct ParamFamily {
  RealVector theta;
  std::function<Matrix(const RealVector&)> gamma_of;
  std::function<Matrix(const RealVector&, int)> dgamma_of;

  int q() const { return static_cast<int>(theta.size()); }
};

/// Symmetrized q x q information matrix.  Construction symmetrizes and clips
/// eigenvalues in [-1e-8 * lambda_max, 0); anything lower raises
/// NegativeEigenvalue.
class HelstromMatrix {
 public:
  explicit HelstromMatrix(RealMatrix k);

  int q() const { return static_cast<int>(entries_.rows()); }
  const RealMatrix& entries() const { return entries_; }

 private:
  RealMatrix entries_;
};

/// Symmetric logarithmic derivative: the Hermitian solution of
/// (S Gamma + Gamma S) / 2 = dGamma restricted to the support of Gamma.
/// In the eigenbasis S_jk = 2 dGamma_jk / (lambda_j + lambda_k); entries with
/// lambda_j + lambda_k below the support cutoff are set to zero, and raise
/// DerivativeOutsideSupport if dGamma carries weight there.
HermitianMatrix sld(const IntensityOperator& gamma, const HermitianMatrix& dgamma,
                    double tol_supp = Tolerances{}.supp);

/// Helstrom information K_mu_nu = Re tr[(S_mu S_nu + S_nu S_mu)/2 Gamma].
HelstromMatrix helstrom(const ParamFamily& family, const RealVector& theta,
                        double fd_step = 1e-5);

/// Dense Sylvester solve A X + X A^H = C via complex Schur reduction.
/// Near-singular divisor pairs are deflated to zero when the right-hand side
/// is consistent; otherwise SingularLyapunov is raised.
Matrix solve_sylvester(const Matrix& a, const Matrix& c);

/// Scalar estimation posed on a fixed non-orthogonal basis with Gram matrix
/// G: coefficient matrices Gamma_t (operator) and Delta_t (its derivative)
/// satisfy S_t G Gamma_t + Gamma_t G S_t = 2 Delta_t.  delta_reg sets the
/// spectral scale, measured in the Gram metric, below which a direction
/// counts as unpopulated by the operator; such directions are excluded from
/// the solve rather than inverted, and significant derivative weight on one
/// raises SingularLyapunov.
struct GramBasisProblem {
  HermitianMatrix gram;
  HermitianMatrix gamma_t;
  HermitianMatrix delta_t;
  double delta_reg = 1e-13;

  GramBasisProblem(HermitianMatrix gram_in, HermitianMatrix gamma_t_in,
                   HermitianMatrix delta_t_in, double delta_reg_in = 1e-13);
};

struct GramSolution {
  HermitianMatrix s_t;
  double k;  // tr(G S_t G Delta_t), real up to solver noise
};

GramSolution sld_gram(const GramBasisProblem& problem);

/// Fisher information of independent Poisson bins:
/// J_mu_nu = sum_j dLambda_j_mu dLambda_j_nu / Lambda_j over bins with
/// Lambda_j > 0.  A zero bin whose derivative is nonzero has no finite
/// information and raises ZeroIntensityWithDerivative.
RealMatrix fisher_poisson(const IntensityVector& lambda, const RealMatrix& dlambda);

}  // namespace pinfo
