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

// Exercises the shared library through relumd.h only.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "relumd/relumd.h"

namespace {

namespace fs = std::filesystem;

struct Matrix {
  rmd_matrix* p = nullptr;
  Matrix() = default;
  Matrix(const Matrix&) = delete;
  Matrix& operator=(const Matrix&) = delete;
  ~Matrix() { rmd_matrix_free(p); }
  double at(size_t i, size_t j) const { return rmd_matrix_data(p)[j * rmd_matrix_rows(p) + i]; }
};

struct Config {
  rmd_config* p = nullptr;
  Config() { REQUIRE(rmd_config_create(&p) == RMD_OK); }
  ~Config() { rmd_config_free(p); }
};

struct Report {
  rmd_report* p = nullptr;
  ~Report() { rmd_report_free(p); }
};

fs::path scratch(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("relumd_capi_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(rmd_version()) == "0.1.0");
  CHECK(std::string(rmd_status_name(RMD_OK)) == "ok");
  CHECK(std::string(rmd_status_name(RMD_ERR_PARSE)) == "parse error");
}

TEST_CASE("matrix handles copy column-major data") {
  const double data[] = {1, 2, 3, 4, 5, 6};  // 2 x 3
  Matrix m;
  REQUIRE(rmd_matrix_create(2, 3, data, &m.p) == RMD_OK);
  CHECK(rmd_matrix_rows(m.p) == 2);
  CHECK(rmd_matrix_cols(m.p) == 3);
  CHECK(m.at(1, 2) == 6.0);
  CHECK(rmd_matrix_nnz(m.p) == 6);

  Matrix z;
  REQUIRE(rmd_matrix_create(3, 3, nullptr, &z.p) == RMD_OK);
  CHECK(rmd_matrix_nnz(z.p) == 0);
}

TEST_CASE("null arguments are reported, not dereferenced") {
  CHECK(rmd_matrix_create(1, 1, nullptr, nullptr) == RMD_ERR_INVALID_ARGUMENT);
  CHECK(std::string(rmd_last_error()).find("NULL") != std::string::npos);
  CHECK(rmd_solve(nullptr, nullptr, RMD_METHOD_EBCD, nullptr) == RMD_ERR_INVALID_ARGUMENT);
  CHECK(rmd_matrix_read_mm(nullptr, nullptr) == RMD_ERR_INVALID_ARGUMENT);
  rmd_matrix_free(nullptr);
  rmd_report_free(nullptr);
  CHECK(rmd_report_trace_length(nullptr) == 0);
}

TEST_CASE("method names") {
  rmd_method m;
  REQUIRE(rmd_method_parse("naive", &m) == RMD_OK);
  CHECK(m == RMD_METHOD_NAIVE);
  CHECK(std::string(rmd_method_name(RMD_METHOD_EBCD)) == "ebcd");
  CHECK(rmd_method_parse("admm", &m) == RMD_ERR_INVALID_ARGUMENT);
  CHECK(std::string(rmd_last_error()).find("admm") != std::string::npos);
}

TEST_CASE("config validation leaves the config unchanged on error") {
  Config c;
  CHECK(rmd_config_set_extrapolation(c.p, 1.0, 0.3, 0.8) == RMD_ERR_INVALID_ARGUMENT);
  CHECK(rmd_config_set_extrapolation(c.p, 4.0, 0.3, 1.5) == RMD_ERR_INVALID_ARGUMENT);
  CHECK(rmd_config_set_rank(c.p, 0) == RMD_ERR_INVALID_ARGUMENT);
  CHECK(rmd_config_set_tol(c.p, -1.0) == RMD_ERR_INVALID_ARGUMENT);
  CHECK(rmd_config_set_model(c.p, RMD_MODEL_SHIFTED_NEGATIVE, NAN) == RMD_ERR_INVALID_ARGUMENT);
  CHECK(rmd_config_set_time_limit(c.p, -1.0) == RMD_OK);
}

TEST_CASE("solving a generated noiseless problem") {
  Matrix x, theta;
  REQUIRE(rmd_gen_relu(40, 30, 3, 0.0, 5, &x.p, &theta.p) == RMD_OK);
  Config c;
  REQUIRE(rmd_config_set_rank(c.p, 3) == RMD_OK);
  REQUIRE(rmd_config_set_maxit(c.p, 3000) == RMD_OK);
  REQUIRE(rmd_config_set_seed(c.p, 5) == RMD_OK);
  Report r;
  REQUIRE(rmd_solve(x.p, c.p, RMD_METHOD_EBCD, &r.p) == RMD_OK);
  CHECK(rmd_report_gamma(r.p) <= 1e-9);
  CHECK(std::string(rmd_report_stop_reason(r.p)) == "tol");
  CHECK(rmd_report_monotone_violations(r.p) == 0);
  CHECK(rmd_report_trace_length(r.p) == static_cast<size_t>(rmd_report_iterations(r.p)) + 1);

  rmd_trace_row row;
  REQUIRE(rmd_report_trace_row(r.p, 0, &row) == RMD_OK);
  CHECK(row.iter == 0);
  CHECK(std::isnan(row.delta));
  CHECK(rmd_report_trace_row(r.p, 1u << 30, &row) == RMD_ERR_INVALID_ARGUMENT);

  rmd_kkt k;
  rmd_report_kkt(r.p, &k);
  CHECK(k.primal_eq == 0.0);
  CHECK(k.comp_slack == 0.0);

  Matrix w, h, wh;
  REQUIRE(rmd_report_factors(r.p, &w.p, &h.p) == RMD_OK);
  CHECK(rmd_matrix_rows(w.p) == 40);
  CHECK(rmd_matrix_cols(h.p) == 30);
  REQUIRE(rmd_report_product(r.p, &wh.p) == RMD_OK);
  double err = 0.0, ref = 0.0;
  for (size_t j = 0; j < 30; ++j)
    for (size_t i = 0; i < 40; ++i) {
      const double xv = x.at(i, j), mv = std::max(0.0, wh.at(i, j));
      err += (xv - mv) * (xv - mv);
      ref += xv * xv;
    }
  CHECK(std::sqrt(err / ref) == doctest::Approx(rmd_report_ls_rel_error(r.p)).epsilon(1e-6));

  const std::string js = rmd_report_summary_json(r.p);
  CHECK(js.front() == '{');
  CHECK(js.find("\"stop_reason\":\"tol\"") != std::string::npos);
}

TEST_CASE("solve rejects negative data and oversized rank") {
  const double neg[] = {1, -1, 0, 2};
  Matrix x;
  REQUIRE(rmd_matrix_create(2, 2, neg, &x.p) == RMD_OK);
  Config c;
  Report r;
  CHECK(rmd_solve(x.p, c.p, RMD_METHOD_BCD, &r.p) == RMD_ERR_DOMAIN);
  CHECK(r.p == nullptr);

  const double pos[] = {1, 0, 0, 2};
  Matrix y;
  REQUIRE(rmd_matrix_create(2, 2, pos, &y.p) == RMD_OK);
  REQUIRE(rmd_config_set_rank(c.p, 3) == RMD_OK);
  CHECK(rmd_solve(y.p, c.p, RMD_METHOD_BCD, &r.p) == RMD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("file errors map to status codes") {
  const fs::path dir = scratch("files");
  Matrix m;
  CHECK(rmd_matrix_read_mm((dir / "none.mtx").string().c_str(), &m.p) == RMD_ERR_IO);
  const std::string bad = (dir / "bad.mtx").string();
  std::ofstream(bad) << "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 zz\n";
  CHECK(rmd_matrix_read_mm(bad.c_str(), &m.p) == RMD_ERR_PARSE);
  CHECK(std::string(rmd_last_error()).find("line 3") != std::string::npos);
  const std::string neg = (dir / "neg.mtx").string();
  std::ofstream(neg) << "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 -2\n";
  CHECK(rmd_matrix_read_mm(neg.c_str(), &m.p) == RMD_ERR_DOMAIN);
}

TEST_CASE("report artifacts are written") {
  const fs::path dir = scratch("artifacts");
  Matrix x;
  REQUIRE(rmd_gen_relu(20, 20, 2, 0.01, 1, &x.p, nullptr) == RMD_OK);
  Config c;
  REQUIRE(rmd_config_set_rank(c.p, 2) == RMD_OK);
  REQUIRE(rmd_config_set_maxit(c.p, 20) == RMD_OK);
  Report r;
  REQUIRE(rmd_solve(x.p, c.p, RMD_METHOD_BCD, &r.p) == RMD_OK);
  const std::string trace = (dir / "t.csv").string();
  REQUIRE(rmd_report_write_trace(r.p, trace.c_str()) == RMD_OK);
  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  CHECK(header == "iter,gamma,alpha,delta,accepted,elapsed_s");
  REQUIRE(rmd_report_write_factors(r.p, (dir / "f.csv").string().c_str()) == RMD_OK);
  CHECK(fs::exists(dir / "f.csv"));
  CHECK(rmd_write_file_atomic((dir / "x.txt").string().c_str(), "hello") == RMD_OK);
  CHECK(rmd_report_write_trace(r.p, (dir / "no" / "such" / "t.csv").string().c_str()) ==
        RMD_ERR_IO);
}

TEST_CASE("distance completion through the C interface") {
  Matrix pts, theta, x;
  const size_t counts[] = {10, 10, 10};
  REQUIRE(rmd_gen_points(RMD_POINTS_CLUSTERED, counts, 3, 2, &pts.p) == RMD_OK);
  CHECK(rmd_matrix_rows(pts.p) == 30);
  REQUIRE(rmd_edm(pts.p, &theta.p) == RMD_OK);
  double d = 0.0;
  REQUIRE(rmd_observe_below(theta.p, 1.0, &x.p, &d) == RMD_OK);
  Matrix none;
  CHECK(rmd_observe_below(theta.p, 0.0, &none.p, &d) == RMD_ERR_INVALID_ARGUMENT);
  CHECK(none.p == nullptr);
  Config c;
  REQUIRE(rmd_config_set_rank(c.p, 5) == RMD_OK);
  REQUIRE(rmd_config_set_maxit(c.p, 5000) == RMD_OK);
  REQUIRE(rmd_config_set_tol(c.p, 1e-10) == RMD_OK);
  REQUIRE(rmd_config_set_model(c.p, RMD_MODEL_SHIFTED_NEGATIVE, d) == RMD_OK);
  Report r;
  REQUIRE(rmd_solve(x.p, c.p, RMD_METHOD_EBCD, &r.p) == RMD_OK);
  double err = 1.0;
  REQUIRE(rmd_report_edmc_error(r.p, theta.p, &err) == RMD_OK);
  CHECK(err <= 1e-8);
}

TEST_CASE("similarity, embedding and metrics") {
  // Points with all pairwise cosines above tau.
  const double p[] = {5.0, 5.2, 6.1, 5.5, 5.9, 1.0, 0.3, 0.7, 0.2, 0.9};  // 5 x 2
  Matrix pts, sim, emb;
  REQUIRE(rmd_matrix_create(5, 2, p, &pts.p) == RMD_OK);
  REQUIRE(rmd_tsm_similarity(pts.p, 0.4, &sim.p) == RMD_OK);
  CHECK(rmd_matrix_nnz(sim.p) == 25);
  REQUIRE(rmd_embed_from_similarity(sim.p, 0.4, 3, &emb.p) == RMD_OK);
  CHECK(rmd_matrix_cols(emb.p) == 2);
  double mad = 1.0;
  REQUIRE(rmd_mad(pts.p, emb.p, 0.4, &mad) == RMD_OK);
  CHECK(mad <= 1e-10);
  CHECK(rmd_tsm_similarity(pts.p, 1.0, &sim.p) == RMD_ERR_INVALID_ARGUMENT);

  Matrix id;
  std::vector<double> eye(64 * 64, 0.0);
  for (size_t i = 0; i < 64; ++i) eye[i * 64 + i] = 1.0;
  REQUIRE(rmd_matrix_create(64, 64, eye.data(), &id.p) == RMD_OK);
  size_t rank = 0;
  int clamped = 0;
  REQUIRE(rmd_compression_rank(id.p, 0.5, &rank, &clamped) == RMD_OK);
  CHECK(rank == 1);
  CHECK(clamped == 1);

  double raw = 0.0, relu = 0.0;
  REQUIRE(rmd_tsvd_baseline(id.p, 16, &raw, &relu) == RMD_OK);
  CHECK(raw == doctest::Approx(std::sqrt(48.0 / 64.0)));
  CHECK(relu <= raw);
}

TEST_CASE("oracle suite through the C interface") {
  rmd_verify_result* v = nullptr;
  REQUIRE(rmd_verify(20240601, 0.0, &v) == RMD_OK);
  CHECK(rmd_verify_all_passed(v) == 1);
  CHECK(rmd_verify_count(v) >= 10);
  const char* name = nullptr;
  int passed = 0;
  REQUIRE(rmd_verify_check(v, 0, &name, &passed, nullptr, nullptr, nullptr) == RMD_OK);
  CHECK(std::string(name) == "sigma_wh_identity");
  CHECK(std::string(rmd_verify_json(v)).find("\"all_passed\": true") != std::string::npos);
  rmd_verify_free(v);

  REQUIRE(rmd_verify(20240601, 1e-3, &v) == RMD_OK);
  CHECK(rmd_verify_all_passed(v) == 0);
  rmd_verify_free(v);
}

TEST_CASE("last error is per thread") {
  rmd_method m;
  REQUIRE(rmd_method_parse("first", &m) != RMD_OK);
  std::thread t([] {
    rmd_method other;
    rmd_method_parse("second", &other);
  });
  t.join();
  CHECK(std::string(rmd_last_error()).find("first") != std::string::npos);
}
