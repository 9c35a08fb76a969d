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

#include "relumd/linalg.hpp"

#include <algorithm>
#include <limits>

#include "relumd/error.hpp"

namespace relumd {

double resolve_rank_tol(RankTolerance tol, Index rows, Index cols) {
  if (tol) {
    if (!(*tol >= 0.0)) throw InvalidArgument("rank tolerance must be nonnegative");
    return *tol;
  }
  return std::numeric_limits<double>::epsilon() *
         static_cast<double>(std::max<Index>({rows, cols, 1}));
}

RangeBasis orthonormal_range_basis(const Matrix& A, RankTolerance tol) {
  RangeBasis out;
  if (A.size() == 0 || A.cwiseAbs().maxCoeff() == 0.0) {
    out.Q.resize(A.rows(), 0);
    return out;
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(A.rows(), A.cols());
  qr.setThreshold(resolve_rank_tol(tol, A.rows(), A.cols()));
  qr.compute(A);
  out.rank = qr.rank();
  // The leading `rank` columns of Q span the range of the leading pivoted
  // columns of A, which is the numerical range of A.
  out.Q = qr.householderQ() * Matrix::Identity(A.rows(), out.rank);
  return out;
}

TruncatedSvd truncated_svd(const Matrix& A, Index r) {
  if (r < 0 || r > std::min(A.rows(), A.cols()))
    throw InvalidArgument("truncated_svd: rank exceeds min(rows, cols)");
  Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.singular_values = svd.singularValues();
  out.factors.W = svd.matrixU().leftCols(r);
  out.factors.H = out.singular_values.head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
  return out;
}

Matrix pseudoinverse(const Matrix& A, RankTolerance tol) {
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? resolve_rank_tol(tol, A.rows(), A.cols()) * s(0) : 0.0;
  Vector inv = Vector::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Index numerical_rank(const Matrix& A, RankTolerance tol) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(A);
  const Vector& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  const double cutoff = resolve_rank_tol(tol, A.rows(), A.cols()) * s(0);
  return (s.array() > cutoff).count();
}

}  // namespace relumd
