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

// Iterative solvers for the three-block latent problem
//
//   min ||Z - M(W, H)||_F^2  s.t.  max(0, Z) = X,
//
// with M(W, H) = sign * W H + offset * e e^T:
//   * BCD:   exact block coordinate descent over (Z, W, H),
//   * eBCD:  BCD on the extrapolated latent point Z_a = W H + a S with the
//            accept/reject restart schedule on a,
//   * Naive: alternating latent projection and truncated SVD.
//
// Every solver keeps the latent iterate feasible: after each step
// Z = latent_update(X, M), so the residual S = Z - M and
// Gamma = ||S||_F / ||X||_F.

#ifndef RELUMD_SOLVERS_HPP_
#define RELUMD_SOLVERS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relumd/core.hpp"
#include "relumd/linalg.hpp"
#include "relumd/theory.hpp"

namespace relumd {

enum class Method { kBcd, kEbcd, kNaive };

std::string_view method_name(Method m);
// Throws InvalidArgument naming the unknown method.
Method parse_method(std::string_view name);

enum class StopReason { kTol, kMaxit, kTime };

std::string_view stop_reason_name(StopReason r);

struct SolverConfig {
  Index rank = 1;
  double tol = 1e-9;
  long maxit = 1000;
  std::optional<double> time_limit;  // wall-clock seconds
  double alpha_bar = 4.0;
  double mu0 = 0.3;
  double delta_bar = 0.8;
  std::uint64_t seed = 0;
  RankTolerance rank_tol;

  // Throws InvalidArgument on 1 >= alpha_bar, delta_bar outside (0, 1),
  // mu0 <= 0, tol < 0, rank < 1 or maxit < 0.
  void validate() const;
};

// Invariant (kept by make_state and every step): M = M(W, H) and
// Z = latent_update(X, M).
struct SolverState {
  Matrix Z;
  FactorPair factors;
  Matrix M;  // cached model matrix
  double alpha = 1.0;
  double mu = 0.3;
  long iter = 0;
  double S_norm = 0.0;
};

struct TraceRecord {
  long k = 0;
  double gamma = 0.0;
  double alpha = 1.0;
  double delta = 0.0;  // NaN on the initial row
  bool accepted = true;
  double elapsed_s = 0.0;
};

struct SolveReport {
  Method method = Method::kEbcd;
  std::vector<TraceRecord> trace;
  FactorPair factors;
  Matrix Z;
  double gamma = 0.0;
  double ls_rel_error = 0.0;  // ||X - max(0, M)||_F / ||X||_F
  KktResidual kkt;
  StopReason stop = StopReason::kMaxit;
  long iterations = 0;
  double elapsed_s = 0.0;
};

// Read-only view handed to an observer after the initial point and after
// every iteration (accepted or not).
struct IterateView {
  const SolverState& state;
  const Matrix& model;  // M(W, H) of the state
  const TraceRecord& record;
};

using IterationObserver = std::function<void(const IterateView&)>;

// Gaussian factors scaled so that ||W||_F = ||H||_F = sqrt(||X||_F).
FactorPair init_factors(const ObservedMatrix& X, Index r, std::uint64_t seed);

// Builds a state from factors: Z = latent_update(X, M(W, H)).
SolverState make_state(const ObservedMatrix& X, const ModelShape& shape, FactorPair factors,
                       double mu0 = 0.3);

// One exact BCD step via the orthonormal-basis route:
//   T = sign (Z - offset); W <- orth(T H^T); H <- W^T T;
//   Z <- latent_update(X, M(W, H)).
// The incoming Z already is the latent update of the incoming model, so the
// returned Z closes the step and its S_norm is the next residual. Rank drops shrink W; an empty basis throws
// NumericalError.
SolverState bcd_step(const ObservedMatrix& X, const ModelShape& shape, const SolverState& state,
                     RankTolerance rank_tol = std::nullopt);

struct EbcdCandidate {
  SolverState state;
  double delta = 0.0;  // ||S(alpha)||_F / ||S||_F
};

// Extrapolated candidate (not yet accepted). Throws AlreadyConverged when
// the current residual is exactly zero. An empty range basis yields an
// unchanged candidate with delta = +inf, so it is always rejected.
EbcdCandidate ebcd_candidate(const ObservedMatrix& X, const ModelShape& shape,
                             const SolverState& state, double alpha,
                             RankTolerance rank_tol = std::nullopt);

// Restart schedule. Returns the next state; `accepted` reports whether the
// candidate replaced the iterate.
SolverState ebcd_accept(const SolverState& state, EbcdCandidate candidate,
                        const SolverConfig& config, bool* accepted = nullptr);

struct NaiveIterate {
  Matrix Z;           // latent projection of the incoming model
  FactorPair theta;   // truncated SVD of sign (Z - offset), factored
};

// Z <- latent_update(X, sign theta + offset); theta <- TSVD_r(sign (Z - offset)).
NaiveIterate naive_step(const ObservedMatrix& X, const ModelShape& shape, const Matrix& theta,
                        Index r);

struct TsvdBaseline {
  Matrix theta;
  double raw_error = 0.0;   // ||X - theta||_F
  double relu_error = 0.0;  // ||X - max(0, theta)||_F
};

TsvdBaseline tsvd_baseline(const ObservedMatrix& X, Index r);

struct SolveOptions {
  std::optional<FactorPair> initial;  // default: init_factors(X, rank, seed)
  IterationObserver observer;
};

SolveReport solve(const ObservedMatrix& X, const ModelShape& shape, const SolverConfig& config,
                  Method method, const SolveOptions& options = {});

}  // namespace relumd

#endif  // RELUMD_SOLVERS_HPP_
