// Copyright 2026 The relumd Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relumd/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relumd/error.hpp"

namespace relumd {
namespace {

void require_full_row_rank(const Matrix& H, RankTolerance tol, const char* what) {
  if (numerical_rank(H, tol) != H.rows())
    throw DomainError(std::string(what) + ": H is numerically rank deficient");
}

Matrix extrapolated_target(const Matrix& Z, const FactorPair& f, const ModelShape& shape,
                           double alpha) {
  const Matrix M = model_matrix(f, shape);
  return shape.to_factor_space(alpha * Z + (1.0 - alpha) * M);
}

}  // namespace

double KktResidual::max_norm() const {
  return std::max({grad_W_norm, grad_H_norm, primal_eq, primal_ineq, comp_slack});
}

KktResidual kkt_residual(const ObservedMatrix& X, const Matrix& Z, const FactorPair& f,
                         const ModelShape& shape) {
  require_same_shape(Z, X.rows(), X.cols(), "kkt_residual");
  const Matrix M = model_matrix(f, shape);
  require_same_shape(M, X.rows(), X.cols(), "kkt_residual");
  const Matrix R = shape.to_factor_space(Z) - f.W * f.H;

  KktResidual out;
  out.grad_W_norm = (R * f.H.transpose()).norm();
  out.grad_H_norm = (f.W.transpose() * R).norm();
  out.primal_eq = project(Z - X.values(), X.support()).norm();
  const Matrix zc = project(Z, X.support(), /*complement=*/true);
  out.primal_ineq = relu(zc).norm();
  const Matrix sigma = project(relu(M), X.support(), /*complement=*/true);
  out.comp_slack = std::abs((sigma.array() * zc.array()).sum());
  double min_sigma = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < X.cols(); ++j)
    for (Index i = 0; i < X.rows(); ++i)
      if (!X.support()(i, j)) min_sigma = std::min(min_sigma, sigma(i, j));
  out.dual_feas = std::isfinite(min_sigma) ? min_sigma : 0.0;
  return out;
}

IdentityGap sigma_wh_check(const Matrix& Z, const FactorPair& f, double alpha,
                           RankTolerance rank_tol) {
  if (!(alpha >= 1.0)) throw InvalidArgument("sigma_wh_check: alpha must be >= 1");
  require_full_row_rank(f.H, rank_tol, "sigma_wh_check");
  const Matrix WH = f.W * f.H;
  const Matrix S = Z - WH;
  const Matrix Za = WH + alpha * S;

  // Projectors built from the definitions.
  const Matrix HHt = f.H * f.H.transpose();
  const Matrix P = f.H.transpose() * HHt.ldlt().solve(f.H);
  const Matrix ZaHt = Za * f.H.transpose();
  Eigen::JacobiSVD<Matrix> svd(ZaHt, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  const double cutoff = resolve_rank_tol(rank_tol, ZaHt.rows(), ZaHt.cols()) * s(0);
  const Index k = (s.array() > cutoff).count();
  const Matrix U = svd.matrixU().leftCols(k);
  const Matrix E = U * U.transpose();

  // W(a) H(a) = E Z_a.
  const Matrix next = E * Za;
  IdentityGap out;
  out.lhs = (next - WH).squaredNorm() / (alpha * alpha);
  const Index n = f.H.cols();
  out.rhs = (S * P).squaredNorm() + (E * S * (Matrix::Identity(n, n) - P)).squaredNorm();
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

FactorPair ebcd_step_v1(const Matrix& Z, const FactorPair& f, const ModelShape& shape,
                        double alpha, RankTolerance rank_tol) {
  if (!(alpha >= 1.0)) throw InvalidArgument("ebcd_step_v1: alpha must be >= 1");
  const Matrix T = extrapolated_target(Z, f, shape, alpha);
  FactorPair out;
  out.W = T * pseudoinverse(f.H, rank_tol);
  out.H = pseudoinverse(out.W, rank_tol) * T;  // W^+ T, so W H = W W^+ T
  return out;
}

double extrapolation_identity_check(const Matrix& Z, const FactorPair& f,
                                    const ModelShape& shape, double alpha,
                                    RankTolerance rank_tol) {
  require_full_row_rank(f.H, rank_tol, "extrapolation_identity_check");
  const Matrix T = extrapolated_target(Z, f, shape, alpha);
  const Matrix w_hat = T * pseudoinverse(f.H, rank_tol);

  const Matrix HHt = f.H * f.H.transpose();
  const Matrix right_inverse = HHt.ldlt().solve(f.H).transpose();  // H^T (H H^T)^{-1}
  const Matrix w_bcd = shape.to_factor_space(Z) * right_inverse;
  const Matrix extrapolated = w_bcd + (alpha - 1.0) * (w_bcd - f.W);
  return (w_hat - extrapolated).norm();
}

double ell(double b, double eps) {
  if (!(b < 0.0)) throw DomainError("ell: b must be negative");
  if (!(eps > 0.0 && eps < 1.0 / std::sqrt(2.0)))
    throw DomainError("ell: eps must lie in (0, 1/sqrt(2))");
  const double trace = 2.0 + b * b + eps * eps;
  const double diff = b * b - eps * eps;
  const double sum = b + eps;
  const double disc = std::sqrt(diff * diff + 4.0 * sum * sum);
  const double det = 1.0 - b * eps;
  return 2.0 * det * det / (trace + disc);
}

Example32 example32_theta(double v, double eps) {
  if (!(v > 0.0)) throw DomainError("example32_theta: v must be positive");
  Example32 out;
  out.theta.resize(2, 2);
  out.theta << 1.0, -v, -1.0 / v, 1.0;
  Matrix X(2, 2);
  X << 1.0, 0.0, eps, 1.0;
  out.ls_error_sq = (X - relu(out.theta)).squaredNorm();
  return out;
}

BoundCheck latent_bound_check(const ObservedMatrix& X, const Matrix& Z, const Matrix& M) {
  require_same_shape(Z, X.rows(), X.cols(), "latent_bound_check");
  if (relu(Z) != X.values())
    throw DomainError("latent_bound_check: Z is not feasible (max(0, Z) != X)");
  BoundCheck out;
  const double err = ls_rmd_error(X, M);
  out.lhs = err * err;
  out.rhs = 4.0 * (Z - M).squaredNorm();
  out.holds = out.lhs <= out.rhs + 1e-12;
  return out;
}

}  // namespace relumd
