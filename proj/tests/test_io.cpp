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

#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "doctest.h"
#include "relumd/error.hpp"
#include "relumd/io.hpp"
#include "relumd/report_io.hpp"
#include "relumd/rng.hpp"
#include "test_util.hpp"

using namespace relumd;
using relumd::testing::mat;

namespace {

std::string write_text(const std::filesystem::path& dir, const std::string& name,
                       const std::string& text) {
  const std::string path = (dir / name).string();
  std::ofstream(path) << text;
  return path;
}

std::size_t parse_error_line(const std::string& path) {
  try {
    read_matrix_market(path);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("matrix market coordinate files") {
  const auto dir = testing::temp_dir("io_mm");
  const std::string id = write_text(dir, "id.mtx",
                                    "%%MatrixMarket matrix coordinate real general\n"
                                    "% comment\n"
                                    "2 2 2\n"
                                    "1 1 1.0\n"
                                    "2 2 1.0\n");
  const ObservedMatrix X = read_matrix_market(id);
  CHECK(X.values() == Matrix::Identity(2, 2));
  CHECK(X.nnz() == 2);

  const std::string sym = write_text(dir, "sym.mtx",
                                     "%%MatrixMarket matrix coordinate real symmetric\n"
                                     "3 3 3\n"
                                     "1 1 2\n"
                                     "3 1 0.5\n"
                                     "3 2 4e0\n");
  const Matrix S = read_matrix_market(sym).values();
  CHECK(S == S.transpose());
  CHECK(S == mat({{2, 0, 0.5}, {0, 0, 4}, {0.5, 4, 0}}));

  const std::string pat = write_text(dir, "pat.mtx",
                                     "%%MatrixMarket matrix coordinate pattern general\n"
                                     "2 3 2\n"
                                     "1 3\n"
                                     "2 1\n");
  CHECK(read_matrix_market(pat).values() == mat({{0, 0, 1}, {1, 0, 0}}));

  const std::string arr = write_text(dir, "arr.mtx",
                                     "%%MatrixMarket matrix array real general\n"
                                     "2 2\n"
                                     "1\n2\n3\n4\n");
  CHECK(read_matrix_market(arr).values() == mat({{1, 3}, {2, 4}}));
}

TEST_CASE("matrix market errors carry line numbers") {
  const auto dir = testing::temp_dir("io_mm_err");
  CHECK(parse_error_line(write_text(dir, "a.mtx", "not a banner\n")) == 1);
  CHECK(parse_error_line(write_text(dir, "b.mtx",
                                    "%%MatrixMarket matrix coordinate real general\n"
                                    "2 2 2\n"
                                    "1 1 1.0\n"
                                    "2 x 1.0\n")) == 4);
  CHECK(parse_error_line(write_text(dir, "c.mtx",
                                    "%%MatrixMarket matrix coordinate real general\n"
                                    "2 2 1\n"
                                    "3 1 1.0\n")) == 3);
  CHECK(parse_error_line(write_text(dir, "d.mtx",
                                    "%%MatrixMarket matrix coordinate real general\n"
                                    "2 2 2\n"
                                    "1 1 1.0\n")) == 4);
  CHECK(parse_error_line(write_text(dir, "e.mtx",
                                    "%%MatrixMarket matrix coordinate complex general\n"
                                    "1 1 1\n1 1 1 0\n")) == 1);
  CHECK(parse_error_line(write_text(dir, "f.mtx",
                                    "%%MatrixMarket matrix coordinate real general\n"
                                    "2 2 2\n1 1 1\n1 1 2\n")) == 4);

  try {
    read_matrix_market(write_text(dir, "g.mtx",
                                  "%%MatrixMarket matrix coordinate real general\n"
                                  "2 2 1\n"
                                  "1 2 oops\n"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  CHECK_THROWS_AS(read_matrix_market((dir / "missing.mtx").string()), IoError);
}

TEST_CASE("negative matrix market entries are a domain error") {
  const auto dir = testing::temp_dir("io_mm_neg");
  const std::string path = write_text(dir, "neg.mtx",
                                      "%%MatrixMarket matrix coordinate real general\n"
                                      "2 2 1\n"
                                      "1 2 -0.5\n");
  CHECK_THROWS_AS(read_matrix_market(path), DomainError);
  CHECK(read_matrix_market_values(path)(0, 1) == -0.5);
}

TEST_CASE("factor files round-trip bit-exactly") {
  const auto dir = testing::temp_dir("io_factors");
  Rng rng(21);
  FactorPair f{rng.gaussian(7, 3), rng.gaussian(3, 5)};
  f.W(0, 0) = std::numeric_limits<double>::denorm_min();
  f.H(1, 2) = -1.0 / 3.0;
  f.H(2, 4) = 1e300;
  const std::string path = (dir / "f.csv").string();
  write_factors(path, f);
  const FactorPair g = read_factors(path);
  CHECK(g.W == f.W);
  CHECK(g.H == f.H);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "7,5,3");
}

TEST_CASE("dense csv round trip and errors") {
  const auto dir = testing::temp_dir("io_csv");
  Rng rng(22);
  const Matrix A = rng.gaussian(4, 6);
  const std::string path = (dir / "a.csv").string();
  write_dense_csv(path, A);
  CHECK(read_dense_csv(path) == A);

  CHECK_THROWS_AS(read_dense_csv(write_text(dir, "short.csv", "2,2\n1,2\n")), ParseError);
  CHECK_THROWS_AS(read_dense_csv(write_text(dir, "wide.csv", "1,2\n1,2,3\n")), ParseError);
  CHECK_THROWS_AS(read_dense_csv(write_text(dir, "nan.csv", "1,1\nabc\n")), ParseError);
  CHECK(read_dense_csv(write_text(dir, "ok.csv", "2,1\n 1.5 \n-2\n")) == mat({{1.5}, {-2}}));
}

TEST_CASE("format_double round trips") {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform(-300, 300));
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("trace csv and summary json") {
  SolveReport rep;
  rep.method = Method::kEbcd;
  rep.trace.push_back({0, 1.0, 1.0, std::numeric_limits<double>::quiet_NaN(), true, 0.0});
  rep.trace.push_back({1, 0.5, 1.0, 0.5, true, 0.01});
  rep.trace.push_back({2, 0.5, 1.3, 1.2, false, 0.02});
  rep.factors = {Matrix::Zero(2, 1), Matrix::Zero(1, 2)};
  rep.gamma = 0.5;
  rep.stop = StopReason::kMaxit;
  rep.iterations = 2;

  const std::string csv = trace_csv(rep);
  CHECK(csv.rfind(std::string(kTraceHeader) + "\n", 0) == 0);
  CHECK(csv.find("\n0,1,1,nan,1,") != std::string::npos);
  CHECK(csv.find("\n2,0.5,1.3,1.2,0,") != std::string::npos);

  const std::string js = summary_json(rep);
  CHECK(js.find("\"method\"") != std::string::npos);
  CHECK(js.find("\"ebcd\"") != std::string::npos);
  CHECK(js.find("\"maxit\"") != std::string::npos);
  CHECK(js.find("\"kkt\"") != std::string::npos);
}
