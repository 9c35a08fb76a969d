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

#ifndef RELUMD_DATA_HPP_
#define RELUMD_DATA_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "relumd/core.hpp"
#include "relumd/linalg.hpp"

namespace relumd {

// Points stored one per row: points.row(i) is p_i in R^d.
struct PointCloud {
  Matrix points;

  Index size() const noexcept { return points.rows(); }
  Index dim() const noexcept { return points.cols(); }
};

enum class GroundTruthKind { kReluSampling, kEdm };

struct GroundTruth {
  Matrix theta_true;
  GroundTruthKind kind = GroundTruthKind::kReluSampling;
};

struct ReluSamplingProblem {
  ObservedMatrix X;
  GroundTruth truth;
  Matrix noise;  // N, zero when sigma = 0
};

// Theta = W H with Gaussian W (m x r), H (r x n); X = max(0, Theta + N) with
// N = sigma * Ntilde * ||Theta||_F / ||Ntilde||_F.
ReluSamplingProblem gen_relu_sampling(Index m, Index n, Index r, double sigma, std::uint64_t seed);

enum class PointMode { kUniform, kClustered };

PointMode parse_point_mode(std::string_view name);

// Uniform: counts[0] points in [0, 10]^3 (counts may hold a single entry).
// Clustered: one cluster per entry of counts; centroids uniform in
// [-10, 10]^3, points = centroid + 3 * N(0, I).
PointCloud gen_points(PointMode mode, const std::vector<Index>& counts, std::uint64_t seed);

// Default layouts: 200 uniform points, or clusters {30, 30, 30, 30, 40, 40}.
std::vector<Index> default_point_counts(PointMode mode);

// Squared Euclidean distance matrix.
Matrix edm(const PointCloud& cloud);

struct Thresholded {
  ObservedMatrix X;
  double d = 0.0;
};

// Picks d so that the fraction of entries with theta < d is as close to
// `frac` as the distinct values allow, and forms X = max(0, d - theta).
// Ties with d stay unobserved.
Thresholded observe_below(const Matrix& theta, double frac);

// ||W H - theta_true||_F / ||theta_true||_F for the X ~ max(0, d - W H) model.
double edmc_relative_error(const FactorPair& factors, const Matrix& theta_true);

// X_ij = max(0, <z_i, z_j> - tau ||z_i|| ||z_j||).
ObservedMatrix tsm_similarity(const PointCloud& cloud, double tau);

// Undoes the threshold on a similarity factorization: with n_i =
// sqrt(max(0, theta_ii) / (1 - tau)), returns theta + tau n n^T, the Gram
// matrix implied by a tau-faithful embedding.
Matrix tsm_gram_from_theta(const Matrix& theta, double tau);

// Symmetric eigendecomposition of (theta + theta^T) / 2 keeping the top-r
// eigenpairs above sqrt(eps) * lambda_max; rows of the result are the
// embedded points.
// Throws DomainError when no eigenvalue is positive.
PointCloud embed_from_theta(const Matrix& theta, Index r);

// Mean angular deviation over P(tau) = {(i, j) : <z_i, z_j> > tau ||z_i|| ||z_j||}.
// Throws DomainError when P(tau) is empty.
double mad(const PointCloud& original, const PointCloud& embedded, double tau);

struct CompressionRank {
  Index rank = 1;
  bool clamped = false;  // formula gave 0
};

// r = floor(ratio * nnz / (m + n)), at least 1.
CompressionRank compression_rank(const ObservedMatrix& X, double ratio);

}  // namespace relumd

#endif  // RELUMD_DATA_HPP_
