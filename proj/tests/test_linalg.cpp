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

#include <cmath>

#include "doctest.h"
#include "relumd/linalg.hpp"
#include "relumd/rng.hpp"
#include "test_util.hpp"

using namespace relumd;
using relumd::testing::mat;

TEST_CASE("orthonormal_range_basis of a rank-one matrix") {
  const Matrix A = mat({{1}, {1}}) * mat({{2, 0}});
  const RangeBasis b = orthonormal_range_basis(A);
  REQUIRE(b.rank == 1);
  REQUIRE(b.Q.cols() == 1);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(b.Q(0, 0)) - s) <= 1e-15);
  CHECK(std::abs(b.Q(0, 0) - b.Q(1, 0)) <= 1e-15);
}

TEST_CASE("orthonormal_range_basis of the identity") {
  const RangeBasis b = orthonormal_range_basis(Matrix::Identity(3, 3));
  CHECK(b.rank == 3);
  CHECK((b.Q.transpose() * b.Q - Matrix::Identity(3, 3)).norm() <= 1e-14);
}

TEST_CASE("orthonormal_range_basis reproduces full-rank A") {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const Matrix A = rng.gaussian(20, 5);
    const RangeBasis b = orthonormal_range_basis(A);
    CHECK(b.rank == 5);
    CHECK((b.Q * b.Q.transpose() * A - A).norm() <= 1e-10 * A.norm());
    CHECK((b.Q.transpose() * b.Q - Matrix::Identity(5, 5)).norm() <= 1e-12);
  }
}

TEST_CASE("orthonormal_range_basis drops numerically dependent columns") {
  Rng rng(2);
  const Matrix B = rng.gaussian(12, 2);
  const Matrix A = B * rng.gaussian(2, 5);  // rank 2, five columns
  const RangeBasis b = orthonormal_range_basis(A);
  CHECK(b.rank == 2);
  CHECK(b.Q.cols() == 2);
  CHECK((b.Q * b.Q.transpose() * A - A).norm() <= 1e-10 * A.norm());
}

TEST_CASE("orthonormal_range_basis signals the zero matrix") {
  const RangeBasis b = orthonormal_range_basis(Matrix::Zero(4, 3));
  CHECK(b.empty());
  CHECK(b.Q.rows() == 4);
  CHECK(b.Q.cols() == 0);
}

TEST_CASE("truncated_svd is the Eckart-Young optimum") {
  const TruncatedSvd t = truncated_svd(Matrix::Identity(2, 2), 1);
  CHECK((Matrix::Identity(2, 2) - t.factors.product()).norm() == doctest::Approx(1.0));

  Rng rng(4);
  const Matrix A = rng.gaussian(8, 6);
  const TruncatedSvd s = truncated_svd(A, 3);
  const double err = (A - s.factors.product()).norm();
  CHECK(err == doctest::Approx(s.singular_values.tail(3).norm()).epsilon(1e-12));
  CHECK_THROWS(truncated_svd(A, 7));
}

TEST_CASE("pseudoinverse satisfies the Penrose conditions") {
  Rng rng(9);
  const Matrix A = rng.gaussian(6, 2) * rng.gaussian(2, 4);
  const Matrix P = pseudoinverse(A);
  CHECK((A * P * A - A).norm() <= 1e-12 * A.norm());
  CHECK((P * A * P - P).norm() <= 1e-12 * P.norm());
  CHECK(((A * P).transpose() - A * P).norm() <= 1e-12);
  CHECK(numerical_rank(A) == 2);
  CHECK(numerical_rank(Matrix::Zero(3, 3)) == 0);
}
