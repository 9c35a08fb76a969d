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

#ifndef RELUMD_LINALG_HPP_
#define RELUMD_LINALG_HPP_

#include <optional>

#include "relumd/core.hpp"

namespace relumd {

// Relative cutoff for numerical rank. A pivot / singular value s is treated
// as zero when |s| <= tol * |largest|. nullopt selects the default
// eps * max(rows, cols).
using RankTolerance = std::optional<double>;

double resolve_rank_tol(RankTolerance tol, Index rows, Index cols);

// Orthonormal basis of the numerical range of A from a column-pivoted QR.
// rank == 0 (and Q has zero columns) when A is numerically zero.
struct RangeBasis {
  Matrix Q;
  Index rank = 0;

  bool empty() const noexcept { return rank == 0; }
};

RangeBasis orthonormal_range_basis(const Matrix& A, RankTolerance tol = std::nullopt);

// Best rank-r approximation in factored form: W = U_r, H = diag(s_r) V_r^T.
struct TruncatedSvd {
  FactorPair factors;
  Vector singular_values;  // all of them, descending
};

TruncatedSvd truncated_svd(const Matrix& A, Index r);

// SVD-based Moore-Penrose pseudoinverse.
Matrix pseudoinverse(const Matrix& A, RankTolerance tol = std::nullopt);

Index numerical_rank(const Matrix& A, RankTolerance tol = std::nullopt);

}  // namespace relumd

#endif  // RELUMD_LINALG_HPP_
