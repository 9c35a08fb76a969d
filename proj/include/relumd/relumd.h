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

/* C interface to the relumd toolkit.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function (NULL is accepted). Every fallible call returns an
 * rmd_status; on failure rmd_last_error() describes the problem until the next
 * failing call on the same thread. Matrices cross the boundary as
 * column-major double arrays. */

#ifndef RELUMD_RELUMD_H_
#define RELUMD_RELUMD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RELUMD_BUILDING_LIBRARY)
#define RMD_API __declspec(dllexport)
#else
#define RMD_API __declspec(dllimport)
#endif
#else
#define RMD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rmd_status {
  RMD_OK = 0,
  RMD_ERR_INVALID_ARGUMENT = 1,
  RMD_ERR_DOMAIN = 2,
  RMD_ERR_PARSE = 3,
  RMD_ERR_IO = 4,
  RMD_ERR_NUMERICAL = 5,
  RMD_ERR_CONVERGED = 6,
  RMD_ERR_INTERNAL = 7
} rmd_status;

typedef enum rmd_method { RMD_METHOD_BCD = 0, RMD_METHOD_EBCD = 1, RMD_METHOD_NAIVE = 2 } rmd_method;

/* M = WH (plain) or M = d ee^T - WH (distance completion). */
typedef enum rmd_model { RMD_MODEL_PLAIN = 0, RMD_MODEL_SHIFTED_NEGATIVE = 1 } rmd_model;

typedef enum rmd_point_mode { RMD_POINTS_UNIFORM = 0, RMD_POINTS_CLUSTERED = 1 } rmd_point_mode;

typedef struct rmd_matrix rmd_matrix;
typedef struct rmd_config rmd_config;
typedef struct rmd_report rmd_report;
typedef struct rmd_verify_result rmd_verify_result;

typedef struct rmd_trace_row {
  long iter;
  double gamma;
  double alpha;
  double delta; /* NaN on row 0 */
  int accepted;
  double elapsed_s;
} rmd_trace_row;

typedef struct rmd_kkt {
  double grad_W_norm;
  double grad_H_norm;
  double primal_eq;
  double primal_ineq;
  double comp_slack;
  double dual_feas;
} rmd_kkt;

RMD_API const char* rmd_version(void);
RMD_API const char* rmd_last_error(void);
RMD_API const char* rmd_status_name(rmd_status status);

/* ---- dense matrices ---- */

/* data may be NULL for a zero matrix. */
RMD_API rmd_status rmd_matrix_create(size_t rows, size_t cols, const double* data,
                                     rmd_matrix** out);
RMD_API void rmd_matrix_free(rmd_matrix* m);
RMD_API size_t rmd_matrix_rows(const rmd_matrix* m);
RMD_API size_t rmd_matrix_cols(const rmd_matrix* m);
/* Column-major storage, valid until the matrix is freed. */
RMD_API const double* rmd_matrix_data(const rmd_matrix* m);
/* Entries strictly greater than zero. */
RMD_API size_t rmd_matrix_nnz(const rmd_matrix* m);

/* Matrix Market; rejects negative entries. */
RMD_API rmd_status rmd_matrix_read_mm(const char* path, rmd_matrix** out);
/* Dense CSV with an "m,n" header line. */
RMD_API rmd_status rmd_matrix_read_csv(const char* path, rmd_matrix** out);
RMD_API rmd_status rmd_matrix_write_csv(const char* path, const rmd_matrix* m);

/* ---- generators and metrics ---- */

/* theta_true may be NULL. */
RMD_API rmd_status rmd_gen_relu(size_t m, size_t n, size_t r, double sigma, uint64_t seed,
                                rmd_matrix** x, rmd_matrix** theta_true);
/* counts == NULL selects the default recipe for the mode. Points are rows. */
RMD_API rmd_status rmd_gen_points(rmd_point_mode mode, const size_t* counts, size_t n_counts,
                                  uint64_t seed, rmd_matrix** points);
RMD_API rmd_status rmd_edm(const rmd_matrix* points, rmd_matrix** out);
RMD_API rmd_status rmd_observe_below(const rmd_matrix* theta, double frac, rmd_matrix** x,
                                     double* d);
RMD_API rmd_status rmd_tsm_similarity(const rmd_matrix* points, double tau, rmd_matrix** out);
/* Points whose Gram matrix is theta + tau n n^T, n_i = sqrt(theta_ii / (1 - tau)),
 * at most r coordinates each. */
RMD_API rmd_status rmd_embed_from_similarity(const rmd_matrix* theta, double tau, size_t r,
                                             rmd_matrix** points);
RMD_API rmd_status rmd_mad(const rmd_matrix* original, const rmd_matrix* embedded, double tau,
                           double* out);
RMD_API rmd_status rmd_compression_rank(const rmd_matrix* x, double ratio, size_t* rank,
                                        int* clamped);
/* Relative errors ||X - T||/||X|| and ||X - max(0, T)||/||X|| of the rank-r TSVD T. */
RMD_API rmd_status rmd_tsvd_baseline(const rmd_matrix* x, size_t r, double* raw_rel_error,
                                     double* relu_rel_error);

/* ---- solver configuration ---- */

RMD_API rmd_status rmd_config_create(rmd_config** out);
RMD_API void rmd_config_free(rmd_config* c);
RMD_API rmd_status rmd_config_set_rank(rmd_config* c, size_t rank);
RMD_API rmd_status rmd_config_set_tol(rmd_config* c, double tol);
RMD_API rmd_status rmd_config_set_maxit(rmd_config* c, long maxit);
/* Negative disables the limit. */
RMD_API rmd_status rmd_config_set_time_limit(rmd_config* c, double seconds);
RMD_API rmd_status rmd_config_set_extrapolation(rmd_config* c, double alpha_bar, double mu0,
                                                double delta_bar);
RMD_API rmd_status rmd_config_set_seed(rmd_config* c, uint64_t seed);
/* offset is d for RMD_MODEL_SHIFTED_NEGATIVE and ignored otherwise. */
RMD_API rmd_status rmd_config_set_model(rmd_config* c, rmd_model model, double offset);
RMD_API rmd_status rmd_method_parse(const char* name, rmd_method* out);
RMD_API const char* rmd_method_name(rmd_method method);

/* ---- solving ---- */

RMD_API rmd_status rmd_solve(const rmd_matrix* x, const rmd_config* config, rmd_method method,
                             rmd_report** out);
RMD_API void rmd_report_free(rmd_report* r);
RMD_API double rmd_report_gamma(const rmd_report* r);
RMD_API double rmd_report_ls_rel_error(const rmd_report* r);
RMD_API long rmd_report_iterations(const rmd_report* r);
RMD_API double rmd_report_elapsed(const rmd_report* r);
/* "tol", "maxit" or "time". */
RMD_API const char* rmd_report_stop_reason(const rmd_report* r);
RMD_API void rmd_report_kkt(const rmd_report* r, rmd_kkt* out);
RMD_API size_t rmd_report_trace_length(const rmd_report* r);
RMD_API rmd_status rmd_report_trace_row(const rmd_report* r, size_t k, rmd_trace_row* out);
/* Number of accepted rows whose gamma exceeds the previous accepted gamma by more
 * than a relative 1e-12. */
RMD_API size_t rmd_report_monotone_violations(const rmd_report* r);
/* W H (the factor product, before sign and offset). */
RMD_API rmd_status rmd_report_product(const rmd_report* r, rmd_matrix** out);
RMD_API rmd_status rmd_report_factors(const rmd_report* r, rmd_matrix** w, rmd_matrix** h);
/* ||W H - theta_true||_F / ||theta_true||_F. */
RMD_API rmd_status rmd_report_edmc_error(const rmd_report* r, const rmd_matrix* theta_true,
                                         double* out);
RMD_API rmd_status rmd_report_write_trace(const rmd_report* r, const char* path);
RMD_API rmd_status rmd_report_write_factors(const rmd_report* r, const char* path);
/* JSON object, valid until the report is freed. */
RMD_API const char* rmd_report_summary_json(const rmd_report* r);

/* ---- oracle suite ---- */

/* ell_perturbation is added to every ell(b) evaluation; nonzero values exist
 * to exercise the failure path. */
RMD_API rmd_status rmd_verify(uint64_t seed, double ell_perturbation, rmd_verify_result** out);
RMD_API void rmd_verify_free(rmd_verify_result* v);
RMD_API size_t rmd_verify_count(const rmd_verify_result* v);
RMD_API int rmd_verify_all_passed(const rmd_verify_result* v);
/* Strings stay valid until the result is freed. Any output pointer may be NULL. */
RMD_API rmd_status rmd_verify_check(const rmd_verify_result* v, size_t i, const char** name,
                                    int* passed, double* worst, double* threshold,
                                    const char** detail);
RMD_API const char* rmd_verify_json(const rmd_verify_result* v);

/* ---- files ---- */

/* Writes via a temporary sibling and rename, so readers never see partial files. */
RMD_API rmd_status rmd_write_file_atomic(const char* path, const char* contents);

#ifdef __cplusplus
}
#endif

#endif /* RELUMD_RELUMD_H_ */
