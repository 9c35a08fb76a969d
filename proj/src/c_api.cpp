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

#include "relumd/relumd.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "relumd/core.hpp"
#include "relumd/data.hpp"
#include "relumd/error.hpp"
#include "relumd/io.hpp"
#include "relumd/report_io.hpp"
#include "relumd/solvers.hpp"
#include "relumd/verify.hpp"

struct rmd_matrix {
  relumd::Matrix m;
};

struct rmd_config {
  relumd::SolverConfig solver;
  relumd::ModelShape shape;
};

struct rmd_report {
  relumd::SolveReport report;
  std::string summary;
};

struct rmd_verify_result {
  std::vector<relumd::CheckResult> checks;
  std::string json;
};

namespace {

using relumd::Index;
using relumd::Matrix;

thread_local std::string g_last_error;

template <class F>
rmd_status guarded(F&& body) {
  try {
    body();
    return RMD_OK;
  } catch (const relumd::InvalidArgument& e) {
    g_last_error = e.what();
    return RMD_ERR_INVALID_ARGUMENT;
  } catch (const relumd::DomainError& e) {
    g_last_error = e.what();
    return RMD_ERR_DOMAIN;
  } catch (const relumd::ParseError& e) {
    g_last_error = e.what();
    return RMD_ERR_PARSE;
  } catch (const relumd::IoError& e) {
    g_last_error = e.what();
    return RMD_ERR_IO;
  } catch (const relumd::NumericalError& e) {
    g_last_error = e.what();
    return RMD_ERR_NUMERICAL;
  } catch (const relumd::AlreadyConverged& e) {
    g_last_error = e.what();
    return RMD_ERR_CONVERGED;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RMD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RMD_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RMD_ERR_INTERNAL;
  }
}

template <class T>
const T& deref(const T* p, const char* what) {
  if (p == nullptr) throw relumd::InvalidArgument(std::string(what) + " is NULL");
  return *p;
}

template <class T>
T& deref(T* p, const char* what) {
  if (p == nullptr) throw relumd::InvalidArgument(std::string(what) + " is NULL");
  return *p;
}

std::string text(const char* s, const char* what) {
  if (s == nullptr) throw relumd::InvalidArgument(std::string(what) + " is NULL");
  return s;
}

template <class T>
void require_out(T** out, const char* what) {
  if (out == nullptr) throw relumd::InvalidArgument(std::string(what) + " is NULL");
  *out = nullptr;
}

Index to_index(std::size_t v, const char* what) {
  if (v > static_cast<std::size_t>(std::numeric_limits<Index>::max()))
    throw relumd::InvalidArgument(std::string(what) + " is too large");
  return static_cast<Index>(v);
}

rmd_matrix* wrap(Matrix m) { return new rmd_matrix{std::move(m)}; }

relumd::Method to_method(rmd_method m) {
  switch (m) {
    case RMD_METHOD_BCD: return relumd::Method::kBcd;
    case RMD_METHOD_EBCD: return relumd::Method::kEbcd;
    case RMD_METHOD_NAIVE: return relumd::Method::kNaive;
  }
  throw relumd::InvalidArgument("unknown method code");
}

}  // namespace

extern "C" {

const char* rmd_version(void) { return "0.1.0"; }

const char* rmd_last_error(void) { return g_last_error.c_str(); }

const char* rmd_status_name(rmd_status status) {
  switch (status) {
    case RMD_OK: return "ok";
    case RMD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RMD_ERR_DOMAIN: return "domain error";
    case RMD_ERR_PARSE: return "parse error";
    case RMD_ERR_IO: return "i/o error";
    case RMD_ERR_NUMERICAL: return "numerical error";
    case RMD_ERR_CONVERGED: return "already converged";
    case RMD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// ---- matrices ----

rmd_status rmd_matrix_create(size_t rows, size_t cols, const double* data, rmd_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    Matrix m = Matrix::Zero(to_index(rows, "rows"), to_index(cols, "cols"));
    if (data != nullptr && m.size() > 0)
      m = Eigen::Map<const Matrix>(data, m.rows(), m.cols());
    *out = wrap(std::move(m));
  });
}

void rmd_matrix_free(rmd_matrix* m) { delete m; }

size_t rmd_matrix_rows(const rmd_matrix* m) {
  return m ? static_cast<size_t>(m->m.rows()) : 0;
}

size_t rmd_matrix_cols(const rmd_matrix* m) {
  return m ? static_cast<size_t>(m->m.cols()) : 0;
}

const double* rmd_matrix_data(const rmd_matrix* m) { return m ? m->m.data() : nullptr; }

size_t rmd_matrix_nnz(const rmd_matrix* m) {
  return m ? static_cast<size_t>((m->m.array() > 0.0).count()) : 0;
}

rmd_status rmd_matrix_read_mm(const char* path, rmd_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = wrap(relumd::read_matrix_market(text(path, "path")).values());
  });
}

rmd_status rmd_matrix_read_csv(const char* path, rmd_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = wrap(relumd::read_dense_csv(text(path, "path")));
  });
}

rmd_status rmd_matrix_write_csv(const char* path, const rmd_matrix* m) {
  return guarded([&] { relumd::write_dense_csv(text(path, "path"), deref(m, "matrix").m); });
}

// ---- generators and metrics ----

rmd_status rmd_gen_relu(size_t m, size_t n, size_t r, double sigma, uint64_t seed,
                        rmd_matrix** x, rmd_matrix** theta_true) {
  return guarded([&] {
    require_out(x, "x");
    if (theta_true) *theta_true = nullptr;
    relumd::ReluSamplingProblem p = relumd::gen_relu_sampling(
        to_index(m, "m"), to_index(n, "n"), to_index(r, "r"), sigma, seed);
    if (theta_true) *theta_true = wrap(std::move(p.truth.theta_true));
    *x = wrap(p.X.values());
  });
}

rmd_status rmd_gen_points(rmd_point_mode mode, const size_t* counts, size_t n_counts,
                          uint64_t seed, rmd_matrix** points) {
  return guarded([&] {
    require_out(points, "points");
    if (mode != RMD_POINTS_UNIFORM && mode != RMD_POINTS_CLUSTERED)
      throw relumd::InvalidArgument("unknown point mode");
    const relumd::PointMode pm =
        mode == RMD_POINTS_UNIFORM ? relumd::PointMode::kUniform : relumd::PointMode::kClustered;
    std::vector<Index> c;
    if (counts == nullptr) {
      c = relumd::default_point_counts(pm);
    } else {
      for (size_t i = 0; i < n_counts; ++i) c.push_back(to_index(counts[i], "count"));
    }
    *points = wrap(relumd::gen_points(pm, c, seed).points);
  });
}

rmd_status rmd_edm(const rmd_matrix* points, rmd_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = wrap(relumd::edm({deref(points, "points").m}));
  });
}

rmd_status rmd_observe_below(const rmd_matrix* theta, double frac, rmd_matrix** x, double* d) {
  return guarded([&] {
    require_out(x, "x");
    relumd::Thresholded t = relumd::observe_below(deref(theta, "theta").m, frac);
    if (d) *d = t.d;
    *x = wrap(t.X.values());
  });
}

rmd_status rmd_tsm_similarity(const rmd_matrix* points, double tau, rmd_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = wrap(relumd::tsm_similarity({deref(points, "points").m}, tau).values());
  });
}

rmd_status rmd_embed_from_similarity(const rmd_matrix* theta, double tau, size_t r,
                                     rmd_matrix** points) {
  return guarded([&] {
    require_out(points, "points");
    const Matrix gram = relumd::tsm_gram_from_theta(deref(theta, "theta").m, tau);
    *points = wrap(relumd::embed_from_theta(gram, to_index(r, "r")).points);
  });
}

rmd_status rmd_mad(const rmd_matrix* original, const rmd_matrix* embedded, double tau,
                   double* out) {
  return guarded([&] {
    double& result = deref(out, "out");
    result = relumd::mad({deref(original, "original").m}, {deref(embedded, "embedded").m}, tau);
  });
}

rmd_status rmd_compression_rank(const rmd_matrix* x, double ratio, size_t* rank, int* clamped) {
  return guarded([&] {
    size_t& r = deref(rank, "rank");
    const relumd::CompressionRank c =
        relumd::compression_rank(relumd::support_from(deref(x, "x").m), ratio);
    r = static_cast<size_t>(c.rank);
    if (clamped) *clamped = c.clamped ? 1 : 0;
  });
}

rmd_status rmd_tsvd_baseline(const rmd_matrix* x, size_t r, double* raw_rel_error,
                             double* relu_rel_error) {
  return guarded([&] {
    const relumd::ObservedMatrix X = relumd::support_from(deref(x, "x").m);
    if (X.norm() == 0.0) throw relumd::DomainError("tsvd_baseline: X is zero");
    const relumd::TsvdBaseline b = relumd::tsvd_baseline(X, to_index(r, "r"));
    if (raw_rel_error) *raw_rel_error = b.raw_error / X.norm();
    if (relu_rel_error) *relu_rel_error = b.relu_error / X.norm();
  });
}

// ---- configuration ----

rmd_status rmd_config_create(rmd_config** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = new rmd_config{};
  });
}

void rmd_config_free(rmd_config* c) { delete c; }

rmd_status rmd_config_set_rank(rmd_config* c, size_t rank) {
  return guarded([&] {
    if (rank < 1) throw relumd::InvalidArgument("rank must be >= 1");
    deref(c, "config").solver.rank = to_index(rank, "rank");
  });
}

rmd_status rmd_config_set_tol(rmd_config* c, double tol) {
  return guarded([&] {
    if (!(tol >= 0.0)) throw relumd::InvalidArgument("tol must be >= 0");
    deref(c, "config").solver.tol = tol;
  });
}

rmd_status rmd_config_set_maxit(rmd_config* c, long maxit) {
  return guarded([&] {
    if (maxit < 0) throw relumd::InvalidArgument("maxit must be >= 0");
    deref(c, "config").solver.maxit = maxit;
  });
}

rmd_status rmd_config_set_time_limit(rmd_config* c, double seconds) {
  return guarded([&] {
    rmd_config& cfg = deref(c, "config");
    if (std::isnan(seconds)) throw relumd::InvalidArgument("time limit is NaN");
    if (seconds < 0.0)
      cfg.solver.time_limit.reset();
    else
      cfg.solver.time_limit = seconds;
  });
}

rmd_status rmd_config_set_extrapolation(rmd_config* c, double alpha_bar, double mu0,
                                        double delta_bar) {
  return guarded([&] {
    rmd_config& cfg = deref(c, "config");
    relumd::SolverConfig next = cfg.solver;
    next.alpha_bar = alpha_bar;
    next.mu0 = mu0;
    next.delta_bar = delta_bar;
    next.validate();
    cfg.solver = next;
  });
}

rmd_status rmd_config_set_seed(rmd_config* c, uint64_t seed) {
  return guarded([&] { deref(c, "config").solver.seed = seed; });
}

rmd_status rmd_config_set_model(rmd_config* c, rmd_model model, double offset) {
  return guarded([&] {
    rmd_config& cfg = deref(c, "config");
    switch (model) {
      case RMD_MODEL_PLAIN:
        cfg.shape = relumd::ModelShape::plain();
        return;
      case RMD_MODEL_SHIFTED_NEGATIVE: {
        const relumd::ModelShape s = relumd::ModelShape::shifted_negative(offset);
        s.validate();
        cfg.shape = s;
        return;
      }
    }
    throw relumd::InvalidArgument("unknown model code");
  });
}

rmd_status rmd_method_parse(const char* name, rmd_method* out) {
  return guarded([&] {
    rmd_method& result = deref(out, "out");
    switch (relumd::parse_method(text(name, "name"))) {
      case relumd::Method::kBcd: result = RMD_METHOD_BCD; break;
      case relumd::Method::kEbcd: result = RMD_METHOD_EBCD; break;
      case relumd::Method::kNaive: result = RMD_METHOD_NAIVE; break;
    }
  });
}

const char* rmd_method_name(rmd_method method) {
  switch (method) {
    case RMD_METHOD_BCD: return "bcd";
    case RMD_METHOD_EBCD: return "ebcd";
    case RMD_METHOD_NAIVE: return "naive";
  }
  return "unknown";
}

// ---- solving ----

rmd_status rmd_solve(const rmd_matrix* x, const rmd_config* config, rmd_method method,
                     rmd_report** out) {
  return guarded([&] {
    require_out(out, "out");
    const rmd_config& cfg = deref(config, "config");
    const relumd::ObservedMatrix X = relumd::support_from(deref(x, "x").m);
    auto r = std::make_unique<rmd_report>();
    r->report = relumd::solve(X, cfg.shape, cfg.solver, to_method(method));
    r->summary = relumd::summary_json(r->report);
    *out = r.release();
  });
}

void rmd_report_free(rmd_report* r) { delete r; }

double rmd_report_gamma(const rmd_report* r) {
  return r ? r->report.gamma : std::numeric_limits<double>::quiet_NaN();
}

double rmd_report_ls_rel_error(const rmd_report* r) {
  return r ? r->report.ls_rel_error : std::numeric_limits<double>::quiet_NaN();
}

long rmd_report_iterations(const rmd_report* r) { return r ? r->report.iterations : -1; }

double rmd_report_elapsed(const rmd_report* r) {
  return r ? r->report.elapsed_s : std::numeric_limits<double>::quiet_NaN();
}

const char* rmd_report_stop_reason(const rmd_report* r) {
  return r ? relumd::stop_reason_name(r->report.stop).data() : "";
}

void rmd_report_kkt(const rmd_report* r, rmd_kkt* out) {
  if (r == nullptr || out == nullptr) return;
  const relumd::KktResidual& k = r->report.kkt;
  *out = {k.grad_W_norm, k.grad_H_norm, k.primal_eq, k.primal_ineq, k.comp_slack, k.dual_feas};
}

size_t rmd_report_trace_length(const rmd_report* r) { return r ? r->report.trace.size() : 0; }

rmd_status rmd_report_trace_row(const rmd_report* r, size_t k, rmd_trace_row* out) {
  return guarded([&] {
    const auto& trace = deref(r, "report").report.trace;
    rmd_trace_row& row = deref(out, "out");
    if (k >= trace.size()) throw relumd::InvalidArgument("trace row out of range");
    const relumd::TraceRecord& t = trace[k];
    row = {t.k, t.gamma, t.alpha, t.delta, t.accepted ? 1 : 0, t.elapsed_s};
  });
}

size_t rmd_report_monotone_violations(const rmd_report* r) {
  if (r == nullptr) return 0;
  size_t violations = 0;
  double last = std::numeric_limits<double>::infinity();
  for (const relumd::TraceRecord& t : r->report.trace) {
    if (!t.accepted) continue;
    if (t.gamma > last * (1.0 + 1e-12)) ++violations;
    last = t.gamma;
  }
  return violations;
}

rmd_status rmd_report_product(const rmd_report* r, rmd_matrix** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = wrap(deref(r, "report").report.factors.product());
  });
}

rmd_status rmd_report_factors(const rmd_report* r, rmd_matrix** w, rmd_matrix** h) {
  return guarded([&] {
    require_out(w, "w");
    require_out(h, "h");
    const relumd::FactorPair& f = deref(r, "report").report.factors;
    auto wm = std::make_unique<rmd_matrix>(rmd_matrix{f.W});
    *h = wrap(f.H);
    *w = wm.release();
  });
}

rmd_status rmd_report_edmc_error(const rmd_report* r, const rmd_matrix* theta_true, double* out) {
  return guarded([&] {
    double& result = deref(out, "out");
    result = relumd::edmc_relative_error(deref(r, "report").report.factors,
                                         deref(theta_true, "theta_true").m);
  });
}

rmd_status rmd_report_write_trace(const rmd_report* r, const char* path) {
  return guarded(
      [&] { relumd::write_trace_csv(text(path, "path"), deref(r, "report").report); });
}

rmd_status rmd_report_write_factors(const rmd_report* r, const char* path) {
  return guarded(
      [&] { relumd::write_factors(text(path, "path"), deref(r, "report").report.factors); });
}

const char* rmd_report_summary_json(const rmd_report* r) { return r ? r->summary.c_str() : ""; }

// ---- oracle suite ----

rmd_status rmd_verify(uint64_t seed, double ell_perturbation, rmd_verify_result** out) {
  return guarded([&] {
    require_out(out, "out");
    auto v = std::make_unique<rmd_verify_result>();
    relumd::VerifyOptions opts;
    opts.seed = seed;
    opts.ell_perturbation = ell_perturbation;
    v->checks = relumd::run_verification(opts);

    nlohmann::ordered_json j;
    j["all_passed"] = relumd::all_passed(v->checks);
    j["checks"] = nlohmann::ordered_json::array();
    for (const relumd::CheckResult& c : v->checks) {
      j["checks"].push_back({{"name", c.name},
                             {"passed", c.passed},
                             {"worst", c.worst},
                             {"threshold", c.threshold},
                             {"detail", c.detail}});
    }
    v->json = j.dump(2);
    *out = v.release();
  });
}

void rmd_verify_free(rmd_verify_result* v) { delete v; }

size_t rmd_verify_count(const rmd_verify_result* v) { return v ? v->checks.size() : 0; }

int rmd_verify_all_passed(const rmd_verify_result* v) {
  return v && relumd::all_passed(v->checks) ? 1 : 0;
}

rmd_status rmd_verify_check(const rmd_verify_result* v, size_t i, const char** name,
                            int* passed, double* worst, double* threshold,
                            const char** detail) {
  return guarded([&] {
    const auto& checks = deref(v, "result").checks;
    if (i >= checks.size()) throw relumd::InvalidArgument("check index out of range");
    const relumd::CheckResult& c = checks[i];
    if (name) *name = c.name.c_str();
    if (passed) *passed = c.passed ? 1 : 0;
    if (worst) *worst = c.worst;
    if (threshold) *threshold = c.threshold;
    if (detail) *detail = c.detail.c_str();
  });
}

const char* rmd_verify_json(const rmd_verify_result* v) { return v ? v->json.c_str() : ""; }

// ---- files ----

rmd_status rmd_write_file_atomic(const char* path, const char* contents) {
  return guarded(
      [&] { relumd::write_file_atomic(text(path, "path"), text(contents, "contents")); });
}

}  // extern "C"
