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

#include "relumd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relumd/data.hpp"
#include "relumd/error.hpp"
#include "relumd/rng.hpp"
#include "relumd/solvers.hpp"
#include "relumd/theory.hpp"

namespace relumd {
namespace {

// Sparse nonnegative test matrix: max(0, gaussian), about half zeros.
ObservedMatrix random_observed(Rng& rng, Index m, Index n) {
  return ObservedMatrix::from_values(relu(rng.gaussian(m, n)));
}

FactorPair random_factors(Rng& rng, Index m, Index n, Index r) {
  return {rng.gaussian(m, r), rng.gaussian(r, n)};
}

CheckResult bounded(std::string name, double worst, double threshold, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.worst = worst;
  c.threshold = threshold;
  c.passed = std::isfinite(worst) && worst <= threshold;
  c.detail = std::move(detail);
  return c;
}

CheckResult check_sigma_wh(Rng rng) {
  double worst = 0.0;
  const double alphas[] = {1.0, 1.5, 2.0, 3.9};
  for (int s = 0; s < 200; ++s) {
    const ObservedMatrix X = random_observed(rng, 8, 8);
    SolverState st = make_state(X, ModelShape::plain(), random_factors(rng, 8, 8, 3));
    const double alpha = s < 4 ? alphas[s] : rng.uniform(1.0, 4.0);
    const IdentityGap g = sigma_wh_check(st.Z, st.factors, alpha);
    worst = std::max(worst, g.gap / std::max(g.lhs, 1.0));
  }
  return bounded("sigma_wh_identity", worst, 1e-9,
                 "200 random 8x8 rank-3 states, alpha in [1, 4): relative gap");
}

CheckResult check_scheme_products(Rng rng) {
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const Index m = 20, n = 15, r = 4;
    const ObservedMatrix X = random_observed(rng, m, n);
    const ModelShape shape = s % 2 == 0 ? ModelShape::plain() : ModelShape::shifted_negative(1.5);
    SolverState st = make_state(X, shape, random_factors(rng, m, n, r));
    const double alpha = s == 0 ? 1.0 : rng.uniform(1.0, 4.0);
    const Matrix v2 = ebcd_candidate(X, shape, st, alpha).state.factors.product();
    const Matrix v1 = ebcd_step_v1(st.Z, st.factors, shape, alpha).product();
    worst = std::max(worst, (v1 - v2).norm() / std::max(v1.norm(), 1e-300));
  }
  return bounded("scheme_v1_v2_product", worst, 1e-9,
                 "100 random 20x15 rank-4 states, alpha in [1, 4]: relative product gap");
}

CheckResult check_extrapolation_identity(Rng rng) {
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const ObservedMatrix X = random_observed(rng, 12, 10);
    SolverState st = make_state(X, ModelShape::plain(), random_factors(rng, 12, 10, 3));
    const double alpha = rng.uniform(1.0, 4.0);
    const Matrix w_hat = ebcd_step_v1(st.Z, st.factors, ModelShape::plain(), alpha).W;
    const double gap = extrapolation_identity_check(st.Z, st.factors, ModelShape::plain(), alpha);
    worst = std::max(worst, gap / std::max(w_hat.norm(), 1e-300));
  }
  return bounded("extrapolation_identity", worst, 1e-10,
                 "100 random states: W_v1(a) vs W_bcd + (a-1)(W_bcd - W)");
}

CheckResult check_latent_bound(Rng rng) {
  double worst = -1.0;
  for (int s = 0; s < 1000; ++s) {
    const ObservedMatrix X = random_observed(rng, 6, 6);
    const Matrix M = 2.0 * rng.gaussian(6, 6);
    // Arbitrary feasible latent point: X on the support, nonpositive elsewhere.
    const Matrix free = -(2.0 * rng.gaussian(6, 6)).cwiseAbs();
    const Matrix Z = X.support().select(X.values(), free);
    const BoundCheck b = latent_bound_check(X, Z, M);
    worst = std::max(worst, b.holds ? -1.0 : b.lhs - b.rhs);
  }
  return bounded("latent_bound_random", worst, -1.0,
                 "1000 random feasible 6x6 triples: ||X-max(0,M)||^2 <= 4||Z-M||^2 "
                 "(worst = -1 when all hold)");
}

std::vector<CheckResult> check_ell(double perturbation) {
  auto value = [&](double b) { return ell(b, 0.5) + perturbation; };
  std::vector<CheckResult> out;
  out.push_back(bounded("ell_closed_form", std::abs(value(-0.5) - 1.25), 1e-12,
                        "ell(-0.5, 0.5) == 1.25"));
  const double far = value(-1000.0);
  CheckResult tail;
  tail.name = "ell_far_tail";
  tail.worst = far;
  tail.threshold = 0.2511;
  tail.passed = far > 0.25 && far < 0.2511;
  tail.detail = "ell(-1000, 0.5) in (0.25, 0.2511)";
  out.push_back(tail);

  // 1000 log-spaced points in [-1e6, -1e-6].
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const double b = -std::pow(10.0, -6.0 + 12.0 * i / 999.0);
    worst_margin = std::min(worst_margin, value(b) - 0.25);
  }
  CheckResult grid;
  grid.name = "ell_above_infimum";
  grid.worst = worst_margin;
  grid.threshold = 0.0;
  grid.passed = worst_margin > 0.0;
  grid.detail = "min over 1000-point grid of ell(b, 0.5) - 0.25 must be > 0";
  out.push_back(grid);
  return out;
}

CheckResult check_example32() {
  double worst = 0.0;
  for (double v : {0.1, 1.0, 10.0})
    worst = std::max(worst, std::abs(example32_theta(v, 0.5).ls_error_sq - 0.25));
  return bounded("example32_optimal_family", worst, 1e-12,
                 "||X - max(0, Theta_v)||_F^2 == eps^2 for v in {0.1, 1, 10}");
}

std::vector<CheckResult> check_convergence(std::uint64_t seed) {
  const ReluSamplingProblem p = gen_relu_sampling(40, 40, 3, 0.0, seed);
  SolverConfig cfg;
  cfg.rank = 3;
  cfg.maxit = 5000;
  cfg.seed = seed;
  double bound_violation = -1.0;
  bool feasible = true;
  SolveOptions opts;
  opts.observer = [&](const IterateView& v) {
    const BoundCheck b = latent_bound_check(p.X, v.state.Z, v.model);
    if (!b.holds) bound_violation = std::max(bound_violation, b.lhs - b.rhs);
    feasible = feasible && relu(v.state.Z) == p.X.values();
  };
  const SolveReport rep = solve(p.X, ModelShape::plain(), cfg, Method::kEbcd, opts);

  std::vector<CheckResult> out;
  out.push_back(bounded("ebcd_converges", rep.gamma, 1e-9, "40x40 exact rank-3 problem, eBCD"));
  const double kkt_scale = rep.kkt.max_norm() / p.X.norm();
  out.push_back(bounded("kkt_at_convergence", rep.gamma <= 1e-9 ? kkt_scale : INFINITY, 1e-6,
                        "max KKT residual / ||X||_F at the converged iterate"));
  out.push_back(bounded("latent_bound_iterates", feasible ? bound_violation : INFINITY, -1.0,
                        "latent bound and feasibility at every eBCD iterate "
                        "(worst = -1 when all hold)"));
  return out;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const Rng root(options.seed, Stream::kTest);
  std::vector<CheckResult> out;
  out.push_back(check_sigma_wh(root.split(1)));
  out.push_back(check_scheme_products(root.split(2)));
  out.push_back(check_extrapolation_identity(root.split(3)));
  out.push_back(check_latent_bound(root.split(4)));
  for (auto& c : check_ell(options.ell_perturbation)) out.push_back(std::move(c));
  out.push_back(check_example32());
  for (auto& c : check_convergence(options.seed)) out.push_back(std::move(c));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace relumd
