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

// Executable checks of the theory behind the solvers. These are reference
// computations, written from the definitions and deliberately independent
// of the solver code paths they are used to audit.

#ifndef RELUMD_THEORY_HPP_
#define RELUMD_THEORY_HPP_

#include "relumd/core.hpp"
#include "relumd/linalg.hpp"

namespace relumd {

// Residuals of the first-order optimality system of the latent problem,
// with multipliers Lambda = P_Omega(M - Z) and Sigma = P_Omega^C(max(0, M)).
// Gradient norms are taken in factor space, R = sign (Z - offset) - W H.
struct KktResidual {
  double grad_W_norm = 0.0;   // ||R H^T||_F
  double grad_H_norm = 0.0;   // ||W^T R||_F
  double primal_eq = 0.0;     // ||P_Omega(Z - X)||_F
  double primal_ineq = 0.0;   // ||max(0, P_Omega^C(Z))||_F
  double comp_slack = 0.0;    // |<Sigma, P_Omega^C(Z)>|
  double dual_feas = 0.0;     // min entry of Sigma (0 when Omega^C is empty)

  double max_norm() const;
};

KktResidual kkt_residual(const ObservedMatrix& X, const Matrix& Z, const FactorPair& factors,
                         const ModelShape& shape = ModelShape::plain());

struct IdentityGap {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

// (1/a^2) ||W(a)H(a) - WH||_F^2 versus ||S P||_F^2 + ||E(a) S (I - P)||_F^2,
// with S = Z - W H, P = H^T (H H^T)^{-1} H and E(a) the orthogonal projector
// onto range(Z_a H^T). Plain model. Throws DomainError if H is numerically
// rank deficient.
IdentityGap sigma_wh_check(const Matrix& Z, const FactorPair& factors, double alpha,
                           RankTolerance rank_tol = std::nullopt);

// First extrapolation scheme with explicit pseudoinverses:
//   Z_a = a Z + (1 - a) M, T = sign (Z_a - offset),
//   W = T H^+, H = (W^T)^+ T.
FactorPair ebcd_step_v1(const Matrix& Z, const FactorPair& factors, const ModelShape& shape,
                        double alpha, RankTolerance rank_tol = std::nullopt);

// ||W_v1(a) - (W_bcd + (a - 1)(W_bcd - W))||_F with W_bcd = T H^T (H H^T)^{-1}.
// Throws DomainError if H is numerically rank deficient.
double extrapolation_identity_check(const Matrix& Z, const FactorPair& factors,
                                    const ModelShape& shape, double alpha,
                                    RankTolerance rank_tol = std::nullopt);

// Squared second singular value of [[1, b], [eps, 1]]:
//   (2 + b^2 + eps^2 - sqrt((b^2 - eps^2)^2 + 4 (b + eps)^2)) / 2,
// evaluated as 2 (1 - b eps)^2 / (2 + b^2 + eps^2 + sqrt(...)) so that it
// stays accurate for large |b|. Requires b < 0 and 0 < eps < 1/sqrt(2).
double ell(double b, double eps);

struct Example32 {
  Matrix theta;
  double ls_error_sq = 0.0;
};

// Theta = [[1, -v], [-1/v, 1]] and ||X - max(0, Theta)||_F^2 for
// X = [[1, 0], [eps, 1]]. Requires v > 0.
Example32 example32_theta(double v, double eps);

struct BoundCheck {
  double lhs = 0.0;  // ||X - max(0, M)||_F^2
  double rhs = 0.0;  // 4 ||Z - M||_F^2
  bool holds = false;
};

// Requires max(0, Z) = X exactly; throws DomainError otherwise.
BoundCheck latent_bound_check(const ObservedMatrix& X, const Matrix& Z, const Matrix& M);

}  // namespace relumd

#endif  // RELUMD_THEORY_HPP_
