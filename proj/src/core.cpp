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

#include "relumd/core.hpp"

#include <cmath>
#include <sstream>

#include "relumd/error.hpp"

namespace relumd {

void require_same_shape(const Matrix& a, Index rows, Index cols, const char* what) {
  if (a.rows() != rows || a.cols() != cols) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a.rows() << "x" << a.cols()
        << " vs " << rows << "x" << cols << ")";
    throw InvalidArgument(msg.str());
  }
}

ObservedMatrix ObservedMatrix::from_values(Matrix values) {
  for (Index j = 0; j < values.cols(); ++j) {
    for (Index i = 0; i < values.rows(); ++i) {
      const double v = values(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream msg;
        msg << "observed matrix entry (" << i + 1 << "," << j + 1 << ") = " << v
            << " is not a finite nonnegative value";
        throw DomainError(msg.str());
      }
    }
  }
  ObservedMatrix out;
  out.support_ = values.array() > 0.0;
  out.nnz_ = out.support_.count();
  out.norm_ = values.norm();
  out.values_ = std::move(values);
  return out;
}

std::vector<std::pair<Index, Index>> ObservedMatrix::support_indices() const {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(static_cast<std::size_t>(nnz_));
  for (Index j = 0; j < cols(); ++j)
    for (Index i = 0; i < rows(); ++i)
      if (support_(i, j)) out.emplace_back(i + 1, j + 1);
  return out;
}

void ModelShape::validate() const {
  if (sign != 1 && sign != -1) throw InvalidArgument("model sign must be +1 or -1");
  if (!std::isfinite(offset)) throw InvalidArgument("model offset must be finite");
}

Matrix ModelShape::to_factor_space(const Matrix& Z) const {
  if (sign == 1 && offset == 0.0) return Z;
  return static_cast<double>(sign) * (Z.array() - offset).matrix();
}

Matrix ModelShape::from_factor_space(const Matrix& P) const {
  if (sign == 1 && offset == 0.0) return P;
  return (static_cast<double>(sign) * P.array() + offset).matrix();
}

ObservedMatrix support_from(const Matrix& values) {
  return ObservedMatrix::from_values(values);
}

Matrix project(const Matrix& A, const SupportMask& mask, bool complement) {
  if (A.rows() != mask.rows() || A.cols() != mask.cols())
    throw InvalidArgument("project: matrix and mask dimensions differ");
  if (complement) return mask.select(0.0, A.array()).matrix();
  return mask.select(A.array(), 0.0).matrix();
}

Matrix model_matrix(const FactorPair& factors, const ModelShape& shape) {
  if (factors.W.cols() != factors.H.rows())
    throw InvalidArgument("model_matrix: inner dimensions of W and H differ");
  return shape.from_factor_space(factors.W * factors.H);
}

Matrix latent_update(const ObservedMatrix& X, const Matrix& M) {
  require_same_shape(M, X.rows(), X.cols(), "latent_update");
  return X.support().select(X.values().array(), M.array().min(0.0)).matrix();
}

Matrix residual(const ObservedMatrix& X, const Matrix& M) {
  require_same_shape(M, X.rows(), X.cols(), "residual");
  return X.support()
      .select(X.values().array() - M.array(), -M.array().max(0.0))
      .matrix();
}

double relative_residual(const Matrix& Z, const Matrix& M, const ObservedMatrix& X) {
  require_same_shape(Z, X.rows(), X.cols(), "relative_residual");
  require_same_shape(M, X.rows(), X.cols(), "relative_residual");
  if (X.norm() == 0.0) throw DomainError("relative residual undefined for a zero matrix");
  return (Z - M).norm() / X.norm();
}

double ls_rmd_error(const ObservedMatrix& X, const Matrix& M) {
  require_same_shape(M, X.rows(), X.cols(), "ls_rmd_error");
  return (X.values().array() - M.array().max(0.0)).matrix().norm();
}

Matrix relu(const Matrix& A) { return A.array().max(0.0).matrix(); }

}  // namespace relumd
