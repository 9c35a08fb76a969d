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

#include "relumd/data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "relumd/error.hpp"
#include "relumd/rng.hpp"

namespace relumd {

ReluSamplingProblem gen_relu_sampling(Index m, Index n, Index r, double sigma, std::uint64_t seed) {
  if (m < 1 || n < 1 || r < 1 || r > std::min(m, n))
    throw InvalidArgument("gen_relu_sampling: need 1 <= r <= min(m, n)");
  if (!(sigma >= 0.0)) throw InvalidArgument("gen_relu_sampling: sigma must be >= 0");

  Rng factor_rng(seed, Stream::kReluFactors);
  const Matrix W = factor_rng.gaussian(m, r);
  const Matrix H = factor_rng.gaussian(r, n);

  ReluSamplingProblem out;
  out.truth.theta_true = W * H;
  out.truth.kind = GroundTruthKind::kReluSampling;
  out.noise = Matrix::Zero(m, n);
  if (sigma > 0.0) {
    Rng noise_rng(seed, Stream::kReluNoise);
    const Matrix raw = noise_rng.gaussian(m, n);
    out.noise = (sigma * out.truth.theta_true.norm() / raw.norm()) * raw;
  }
  out.X = ObservedMatrix::from_values(relu(out.truth.theta_true + out.noise));
  return out;
}

PointMode parse_point_mode(std::string_view name) {
  if (name == "uniform") return PointMode::kUniform;
  if (name == "clustered") return PointMode::kClustered;
  throw InvalidArgument("unknown point mode '" + std::string(name) +
                        "' (expected uniform or clustered)");
}

std::vector<Index> default_point_counts(PointMode mode) {
  if (mode == PointMode::kUniform) return {200};
  return {30, 30, 30, 30, 40, 40};
}

PointCloud gen_points(PointMode mode, const std::vector<Index>& counts, std::uint64_t seed) {
  if (counts.empty()) throw InvalidArgument("gen_points: no point counts given");
  for (Index c : counts)
    if (c < 0) throw InvalidArgument("gen_points: negative point count");
  const Index total = std::accumulate(counts.begin(), counts.end(), Index{0});
  if (total < 1) throw InvalidArgument("gen_points: at least one point required");

  constexpr Index kDim = 3;
  Rng rng(seed, Stream::kPoints);
  PointCloud cloud;
  cloud.points.resize(total, kDim);
  if (mode == PointMode::kUniform) {
    for (Index i = 0; i < total; ++i)
      for (Index k = 0; k < kDim; ++k) cloud.points(i, k) = rng.uniform(0.0, 10.0);
    return cloud;
  }
  constexpr double kStd = 3.0;
  Index row = 0;
  for (Index c : counts) {
    Eigen::RowVector3d centroid;
    for (Index k = 0; k < kDim; ++k) centroid(k) = rng.uniform(-10.0, 10.0);
    for (Index i = 0; i < c; ++i, ++row)
      for (Index k = 0; k < kDim; ++k) cloud.points(row, k) = centroid(k) + kStd * rng.normal();
  }
  return cloud;
}

Matrix edm(const PointCloud& cloud) {
  if (cloud.size() == 0) throw InvalidArgument("edm: empty point cloud");
  const Index n = cloud.size();
  Matrix out = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < n; ++i) {
      const double d2 = (cloud.points.row(i) - cloud.points.row(j)).squaredNorm();
      out(i, j) = d2;
      out(j, i) = d2;
    }
  return out;
}

Thresholded observe_below(const Matrix& theta, double frac) {
  if (!(frac > 0.0 && frac <= 1.0)) throw InvalidArgument("observe_below: frac must lie in (0, 1]");
  if (theta.size() == 0) throw InvalidArgument("observe_below: empty matrix");
  if (!theta.allFinite()) throw DomainError("observe_below: non-finite entry");

  std::vector<double> v(theta.data(), theta.data() + theta.size());
  std::sort(v.begin(), v.end());
  const auto total = static_cast<Index>(v.size());
  const double target = frac * static_cast<double>(total);

  // Admissible observed counts are the positions c where v[c-1] < v[c]
  // (plus c = total). Pick the one nearest the target; ties go low.
  Index best = total;
  double best_dist = std::abs(static_cast<double>(total) - target);
  for (Index c = 1; c < total; ++c) {
    if (!(v[c - 1] < v[c])) continue;
    const double dist = std::abs(static_cast<double>(c) - target);
    if (dist < best_dist) {
      best = c;
      best_dist = dist;
    }
  }

  double d;
  if (best < total) {
    d = 0.5 * (v[best - 1] + v[best]);
  } else {
    const double spread = v.back() - v.front();
    d = v.back() + (spread > 0.0 ? spread / static_cast<double>(total) : 1.0);
  }
  Thresholded out;
  out.d = d;
  out.X = ObservedMatrix::from_values((d - theta.array()).max(0.0).matrix());
  return out;
}

double edmc_relative_error(const FactorPair& factors, const Matrix& theta_true) {
  const double denom = theta_true.norm();
  if (denom == 0.0) throw DomainError("edmc_relative_error: ground truth is zero");
  const Matrix wh = factors.product();
  require_same_shape(wh, theta_true.rows(), theta_true.cols(), "edmc_relative_error");
  return (wh - theta_true).norm() / denom;
}

ObservedMatrix tsm_similarity(const PointCloud& cloud, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("tsm_similarity: tau must lie in (0, 1)");
  const Index n = cloud.size();
  const Vector norms = cloud.points.rowwise().norm();
  Matrix X(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = j; i < n; ++i) {
      const double s = cloud.points.row(i).dot(cloud.points.row(j)) - tau * norms(i) * norms(j);
      X(i, j) = s > 0.0 ? s : 0.0;
      X(j, i) = X(i, j);
    }
  return ObservedMatrix::from_values(std::move(X));
}

Matrix tsm_gram_from_theta(const Matrix& theta, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("tsm_gram_from_theta: tau must lie in (0, 1)");
  if (theta.rows() != theta.cols()) throw InvalidArgument("tsm_gram_from_theta: theta must be square");
  const Vector norms = (theta.diagonal().array().max(0.0) / (1.0 - tau)).sqrt().matrix();
  return theta + tau * norms * norms.transpose();
}

PointCloud embed_from_theta(const Matrix& theta, Index r) {
  if (theta.rows() != theta.cols()) throw InvalidArgument("embed_from_theta: theta must be square");
  if (r < 1 || r > theta.rows()) throw InvalidArgument("embed_from_theta: need 1 <= r <= n");
  const Matrix A = 0.5 * (theta + theta.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(A);
  if (eig.info() != Eigen::Success) throw NumericalError("embed_from_theta: eigensolver failed");
  const Vector& lambda = eig.eigenvalues();  // ascending
  const Index n = A.rows();
  const double top = lambda(n - 1);
  if (!(top > 0.0)) throw DomainError("embed_from_theta: no positive eigenvalue");
  // Eigenvalues below sqrt(eps) * top are numerical noise from an inexact fit.
  const double cutoff = std::sqrt(std::numeric_limits<double>::epsilon()) * top;

  Index kept = 0;
  while (kept < r && lambda(n - 1 - kept) > cutoff) ++kept;
  PointCloud out;
  out.points.resize(n, kept);
  for (Index k = 0; k < kept; ++k)
    out.points.col(k) = std::sqrt(lambda(n - 1 - k)) * eig.eigenvectors().col(n - 1 - k);
  return out;
}

namespace {

double angle(const Eigen::Ref<const Eigen::RowVectorXd>& a,
             const Eigen::Ref<const Eigen::RowVectorXd>& b) {
  const double na = a.norm(), nb = b.norm();
  // Zero vectors have no direction; treat them as orthogonal to everything.
  if (!(na > 0.0 && nb > 0.0)) return 0.5 * std::numbers::pi;
  // Equals acos(clamp(cos)) but keeps full accuracy near 0 and pi.
  const Eigen::RowVectorXd u = nb * a, v = na * b;
  return 2.0 * std::atan2((u - v).norm(), (u + v).norm());
}

}  // namespace

double mad(const PointCloud& original, const PointCloud& embedded, double tau) {
  if (original.size() != embedded.size())
    throw InvalidArgument("mad: point counts differ");
  const Index n = original.size();
  const Vector norms = original.points.rowwise().norm();
  double sum = 0.0;
  long count = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const double s = original.points.row(i).dot(original.points.row(j)) - tau * norms(i) * norms(j);
      if (!(s > 0.0)) continue;
      sum += std::abs(angle(original.points.row(i), original.points.row(j)) -
                      angle(embedded.points.row(i), embedded.points.row(j)));
      ++count;
    }
  if (count == 0) throw DomainError("mad: no pair exceeds the similarity threshold");
  return sum / static_cast<double>(count);
}

CompressionRank compression_rank(const ObservedMatrix& X, double ratio) {
  if (X.nnz() == 0) throw DomainError("compression_rank: X has no nonzero entries");
  if (!(ratio > 0.0)) throw InvalidArgument("compression_rank: ratio must be positive");
  const double raw = ratio * static_cast<double>(X.nnz()) / static_cast<double>(X.rows() + X.cols());
  CompressionRank out;
  out.rank = static_cast<Index>(std::floor(raw));
  if (out.rank < 1) {
    out.rank = 1;
    out.clamped = true;
  }
  return out;
}

}  // namespace relumd
