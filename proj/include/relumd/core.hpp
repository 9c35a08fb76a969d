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

// Matrix primitives shared by every solver: the observed nonnegative target
// with its positive support, masked projections, the model matrix, the latent
// projection and residual algebra, and error metrics.
//
// All functions here are pure.

#ifndef RELUMD_CORE_HPP_
#define RELUMD_CORE_HPP_

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace relumd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using SupportMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Sparse nonnegative target X stored densely together with its support
// Omega = {(i, j) : X(i, j) > 0}. Entries exactly equal to zero are outside
// the support; values are kept bit-exact.
class ObservedMatrix {
 public:
  ObservedMatrix() = default;

  // Throws DomainError on a negative or non-finite entry.
  static ObservedMatrix from_values(Matrix values);

  const Matrix& values() const noexcept { return values_; }
  const SupportMask& support() const noexcept { return support_; }
  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  Index nnz() const noexcept { return nnz_; }
  double norm() const noexcept { return norm_; }

  // 1-indexed (row, col) pairs of the support in column-major order.
  std::vector<std::pair<Index, Index>> support_indices() const;

 private:
  Matrix values_;
  SupportMask support_;
  Index nnz_ = 0;
  double norm_ = 0.0;
};

// Low-rank factors W (m x r) and H (r x n).
struct FactorPair {
  Matrix W;
  Matrix H;

  Index rank() const noexcept { return W.cols(); }
  Matrix product() const { return W * H; }
};

// M(W, H) = sign * W H + offset * e e^T. The plain model is (+1, 0); the
// distance-completion model X ~ max(0, d e e^T - W H) is (-1, d).
struct ModelShape {
  int sign = 1;
  double offset = 0.0;

  static ModelShape plain() { return {1, 0.0}; }
  static ModelShape shifted_negative(double d) { return {-1, d}; }

  bool is_plain() const noexcept { return sign == 1 && offset == 0.0; }

  // Throws InvalidArgument unless sign is +1 or -1 and offset is finite.
  void validate() const;

  // Maps a latent matrix into factor space: sign * (Z - offset).
  Matrix to_factor_space(const Matrix& Z) const;
  // Inverse of to_factor_space: sign * P + offset.
  Matrix from_factor_space(const Matrix& P) const;
};

ObservedMatrix support_from(const Matrix& values);

// P_Omega(A), or P_Omega^C(A) when complement is set.
Matrix project(const Matrix& A, const SupportMask& mask, bool complement = false);

Matrix model_matrix(const FactorPair& factors, const ModelShape& shape);

// Euclidean projection of M onto {Z : max(0, Z) = X}:
// Z = P_Omega(X) + P_Omega^C(min(0, M)).
Matrix latent_update(const ObservedMatrix& X, const Matrix& M);

// S = P_Omega(X - M) - P_Omega^C(max(0, M)), i.e. latent_update(X, M) - M.
Matrix residual(const ObservedMatrix& X, const Matrix& M);

// Gamma = ||Z - M||_F / ||X||_F. Throws DomainError when X is zero.
double relative_residual(const Matrix& Z, const Matrix& M, const ObservedMatrix& X);

// ||X - max(0, M)||_F.
double ls_rmd_error(const ObservedMatrix& X, const Matrix& M);

// Entrywise max(0, A).
Matrix relu(const Matrix& A);

// Throws InvalidArgument naming `what` unless dimensions agree.
void require_same_shape(const Matrix& a, Index rows, Index cols, const char* what);

}  // namespace relumd

#endif  // RELUMD_CORE_HPP_
