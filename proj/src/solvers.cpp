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

#include "relumd/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "relumd/error.hpp"
#include "relumd/rng.hpp"

namespace relumd {
namespace {

// Fits W H to the factor-space target T within range(T H^T) and re-projects
// the latent variable into `out`. Returns false (leaving `out` untouched)
// when the range basis is empty.
bool refit(const ObservedMatrix& X, const ModelShape& shape, const Matrix& T, const Matrix& H,
           RankTolerance rank_tol, SolverState& out) {
  RangeBasis basis = orthonormal_range_basis(T * H.transpose(), rank_tol);
  if (basis.empty()) return false;
  out.factors.H.noalias() = basis.Q.transpose() * T;
  out.factors.W = std::move(basis.Q);
  out.M.noalias() = out.factors.W * out.factors.H;
  if (!shape.is_plain()) out.M = shape.from_factor_space(out.M);
  out.Z = latent_update(X, out.M);
  out.S_norm = (out.Z - out.M).norm();
  return true;
}

SolverState carry_scalars(const SolverState& s) {
  SolverState out;
  out.alpha = s.alpha;
  out.mu = s.mu;
  out.iter = s.iter;
  return out;
}

double ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kBcd: return "bcd";
    case Method::kEbcd: return "ebcd";
    case Method::kNaive: return "naive";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "bcd") return Method::kBcd;
  if (name == "ebcd") return Method::kEbcd;
  if (name == "naive") return Method::kNaive;
  throw InvalidArgument("unknown method '" + std::string(name) +
                        "' (expected one of: bcd, ebcd, naive)");
}

std::string_view stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::kTol: return "tol";
    case StopReason::kMaxit: return "maxit";
    case StopReason::kTime: return "time";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (rank < 1) throw InvalidArgument("rank must be >= 1");
  if (!(tol >= 0.0)) throw InvalidArgument("tol must be >= 0");
  if (maxit < 0) throw InvalidArgument("maxit must be >= 0");
  if (!(alpha_bar > 1.0) || !std::isfinite(alpha_bar))
    throw InvalidArgument("alpha_bar must be a finite value > 1");
  if (!(mu0 > 0.0)) throw InvalidArgument("mu0 must be > 0");
  if (!(delta_bar > 0.0 && delta_bar < 1.0)) throw InvalidArgument("delta_bar must lie in (0, 1)");
  if (time_limit && !(*time_limit >= 0.0)) throw InvalidArgument("time_limit must be >= 0");
  if (rank_tol && !(*rank_tol >= 0.0)) throw InvalidArgument("rank_tol must be >= 0");
}

FactorPair init_factors(const ObservedMatrix& X, Index r, std::uint64_t seed) {
  if (r < 1) throw InvalidArgument("init_factors: rank must be >= 1");
  if (X.norm() == 0.0) throw DomainError("init_factors: X is identically zero");
  Rng rng(seed, Stream::kInit);
  FactorPair f;
  f.W = rng.gaussian(X.rows(), r);
  f.H = rng.gaussian(r, X.cols());
  const double target = std::sqrt(X.norm());
  f.W *= target / f.W.norm();
  f.H *= target / f.H.norm();
  return f;
}

SolverState make_state(const ObservedMatrix& X, const ModelShape& shape, FactorPair factors,
                       double mu0) {
  if (factors.W.rows() != X.rows() || factors.H.cols() != X.cols() ||
      factors.W.cols() != factors.H.rows())
    throw InvalidArgument("make_state: factor dimensions do not match X");
  SolverState s;
  s.factors = std::move(factors);
  s.M = model_matrix(s.factors, shape);
  s.Z = latent_update(X, s.M);
  s.S_norm = (s.Z - s.M).norm();
  s.mu = mu0;
  return s;
}

SolverState bcd_step(const ObservedMatrix& X, const ModelShape& shape, const SolverState& state,
                     RankTolerance rank_tol) {
  SolverState out = carry_scalars(state);
  const bool ok = shape.is_plain()
                      ? refit(X, shape, state.Z, state.factors.H, rank_tol, out)
                      : refit(X, shape, shape.to_factor_space(state.Z), state.factors.H, rank_tol, out);
  if (!ok) throw NumericalError("bcd_step: range of Z H^T is numerically empty");
  return out;
}

EbcdCandidate ebcd_candidate(const ObservedMatrix& X, const ModelShape& shape,
                             const SolverState& state, double alpha, RankTolerance rank_tol) {
  if (!(alpha >= 1.0)) throw InvalidArgument("ebcd_candidate: alpha must be >= 1");
  if (state.S_norm == 0.0)
    throw AlreadyConverged("ebcd_candidate: residual is zero, iterate already converged");
  // Z_alpha = M + alpha S, formed directly in factor space.
  Matrix target = alpha * state.Z + (1.0 - alpha) * state.M;
  if (!shape.is_plain()) target = shape.to_factor_space(target);

  EbcdCandidate c{carry_scalars(state), std::numeric_limits<double>::infinity()};
  if (refit(X, shape, target, state.factors.H, rank_tol, c.state))
    c.delta = c.state.S_norm / state.S_norm;
  else
    c.state = state;
  return c;
}

SolverState ebcd_accept(const SolverState& state, EbcdCandidate candidate,
                        const SolverConfig& config, bool* accepted) {
  const double delta = candidate.delta;
  // Also rejects NaN.
  if (!(delta < 1.0)) {
    if (accepted) *accepted = false;
    SolverState out = state;
    out.alpha = 1.0;
    return out;
  }
  if (accepted) *accepted = true;
  SolverState out = std::move(candidate.state);
  double alpha = state.alpha;
  double mu = state.mu;
  if (delta >= config.delta_bar) {
    mu = std::max(mu, 0.25 * (alpha - 1.0));
    alpha = std::min(alpha + mu, config.alpha_bar);
    if (alpha == config.alpha_bar) alpha = 1.0;
  }
  out.alpha = alpha;
  out.mu = mu;
  return out;
}

NaiveIterate naive_step(const ObservedMatrix& X, const ModelShape& shape, const Matrix& theta,
                        Index r) {
  require_same_shape(theta, X.rows(), X.cols(), "naive_step");
  if (r < 1 || r > std::min(X.rows(), X.cols()))
    throw InvalidArgument("naive_step: rank must lie in [1, min(m, n)]");
  NaiveIterate out;
  out.Z = latent_update(X, shape.from_factor_space(theta));
  out.theta = truncated_svd(shape.to_factor_space(out.Z), r).factors;
  return out;
}

TsvdBaseline tsvd_baseline(const ObservedMatrix& X, Index r) {
  if (r < 1 || r > std::min(X.rows(), X.cols()))
    throw InvalidArgument("tsvd_baseline: rank must lie in [1, min(m, n)]");
  TsvdBaseline out;
  out.theta = truncated_svd(X.values(), r).factors.product();
  out.raw_error = (X.values() - out.theta).norm();
  out.relu_error = ls_rmd_error(X, out.theta);
  return out;
}

SolveReport solve(const ObservedMatrix& X, const ModelShape& shape, const SolverConfig& config,
                  Method method, const SolveOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  config.validate();
  shape.validate();
  if (X.rows() == 0 || X.cols() == 0) throw DomainError("solve: X is empty");
  if (X.norm() == 0.0) throw DomainError("solve: X is identically zero");
  if (config.rank > std::min(X.rows(), X.cols())) {
    std::ostringstream msg;
    msg << "solve: rank " << config.rank << " exceeds min(m, n) = " << std::min(X.rows(), X.cols());
    throw InvalidArgument(msg.str());
  }

  FactorPair initial = options.initial ? *options.initial : init_factors(X, config.rank, config.seed);
  SolverState state = make_state(X, shape, std::move(initial), config.mu0);
  state.alpha = 1.0;

  SolveReport report;
  report.method = method;
  const double xnorm = X.norm();

  auto emit = [&](const TraceRecord& rec) {
    report.trace.push_back(rec);
    if (options.observer) options.observer(IterateView{state, state.M, report.trace.back()});
  };

  TraceRecord rec;
  rec.k = 0;
  rec.gamma = state.S_norm / xnorm;
  rec.alpha = 1.0;
  rec.delta = std::numeric_limits<double>::quiet_NaN();
  rec.accepted = true;
  rec.elapsed_s = elapsed();
  emit(rec);

  for (;;) {
    const double gamma = report.trace.back().gamma;
    if (gamma <= config.tol) {
      report.stop = StopReason::kTol;
      break;
    }
    if (state.iter >= config.maxit) {
      report.stop = StopReason::kMaxit;
      break;
    }
    if (config.time_limit && elapsed() >= *config.time_limit) {
      report.stop = StopReason::kTime;
      break;
    }

    const double prev_norm = state.S_norm;
    rec = TraceRecord{};
    rec.alpha = 1.0;
    rec.accepted = true;
    switch (method) {
      case Method::kBcd: {
        const long iter = state.iter;
        state = bcd_step(X, shape, state, config.rank_tol);
        state.iter = iter;
        rec.delta = ratio(state.S_norm, prev_norm);
        break;
      }
      case Method::kEbcd: {
        rec.alpha = state.alpha;
        EbcdCandidate cand = ebcd_candidate(X, shape, state, state.alpha, config.rank_tol);
        rec.delta = cand.delta;
        bool accepted = false;
        state = ebcd_accept(state, std::move(cand), config, &accepted);
        rec.accepted = accepted;
        break;
      }
      case Method::kNaive: {
        NaiveIterate it = naive_step(X, shape, state.factors.product(), config.rank);
        state.factors = std::move(it.theta);
        state.M = model_matrix(state.factors, shape);
        state.Z = latent_update(X, state.M);
        state.S_norm = (state.Z - state.M).norm();
        rec.delta = ratio(state.S_norm, prev_norm);
        break;
      }
    }
    ++state.iter;
    rec.k = state.iter;
    rec.gamma = state.S_norm / xnorm;
    rec.elapsed_s = elapsed();
    emit(rec);
  }

  report.gamma = state.S_norm / xnorm;
  report.ls_rel_error = ls_rmd_error(X, state.M) / xnorm;
  report.kkt = kkt_residual(X, state.Z, state.factors, shape);
  report.iterations = state.iter;
  report.factors = std::move(state.factors);
  report.Z = std::move(state.Z);
  report.elapsed_s = elapsed();
  return report;
}

}  // namespace relumd
