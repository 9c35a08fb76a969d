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

// Drives the relumd executable as a subprocess and inspects its artifacts.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "relumd/io.hpp"
#include "relumd/rng.hpp"
#include "test_util.hpp"

using namespace relumd;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args, const fs::path& dir, const std::string& env = "") {
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(RELUMD_CLI_PATH) + " " +
                          args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

// Trace text with the elapsed column removed.
std::string without_elapsed(const fs::path& p) {
  std::string out;
  for (const auto& row : read_csv(p)) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i) out += row[i] + ",";
    out += "\n";
  }
  return out;
}

long accepted_gamma_violations(const fs::path& trace) {
  const auto rows = read_csv(trace);
  long bad = 0;
  double last = INFINITY;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][4] != "1") continue;
    const double g = std::stod(rows[i][1]);
    if (g > last * (1.0 + 1e-12)) ++bad;
    last = g;
  }
  return bad;
}

std::size_t count_files(const fs::path& dir, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().filename().string().rfind(prefix, 0) == 0) ++n;
  return n;
}

void write_mtx(const fs::path& p, const Matrix& A) {
  std::ofstream out(p);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.rows() << " " << A.cols() << " " << (A.array() > 0).count() << "\n";
  out.precision(17);
  for (Index j = 0; j < A.cols(); ++j)
    for (Index i = 0; i < A.rows(); ++i)
      if (A(i, j) > 0) out << i + 1 << " " << j + 1 << " " << A(i, j) << "\n";
}

}  // namespace

TEST_CASE("help and bad usage") {
  const fs::path dir = testing::temp_dir("cli_help");
  CHECK(run("--help", dir).code == 0);
  CHECK(run("", dir).code == 1);
  CHECK(run("solve --no-such-flag", dir).code == 1);
}

TEST_CASE("solve on a generated problem emits a monotone trace") {
  const fs::path dir = testing::temp_dir("cli_solve_gen");
  const RunResult r = run("solve --gen relu:m=200,n=200,r=10,sigma=0 --method ebcd --seed 1 --out " +
                              (dir / "out").string(),
                          dir);
  REQUIRE(r.code == 0);
  const fs::path trace = dir / "out" / "trace_ebcd_seed1.csv";
  REQUIRE(fs::exists(trace));
  const auto rows = read_csv(trace);
  CHECK(rows.front() == std::vector<std::string>{"iter", "gamma", "alpha", "delta", "accepted",
                                                 "elapsed_s"});
  CHECK(std::stod(rows.back()[1]) <= 1e-9);
  CHECK(accepted_gamma_violations(trace) == 0);
  const FactorPair f = read_factors((dir / "out" / "factors_ebcd_seed1.csv").string());
  CHECK(f.rank() == 10);
  CHECK(slurp(dir / "out" / "summary.json").find("\"stop_reason\":\"tol\"") != std::string::npos);
}

TEST_CASE("solve over methods and a seed range") {
  const fs::path dir = testing::temp_dir("cli_solve_input");
  Rng rng(3);
  write_mtx(dir / "X.mtx", relu(rng.gaussian(15, 12)));
  const RunResult r = run("solve --input " + (dir / "X.mtx").string() +
                              " --method bcd,ebcd,naive --seeds 1..5 --rank 2 --maxit 40 --jobs 4"
                              " --out " + (dir / "out").string(),
                          dir);
  REQUIRE(r.code == 0);
  CHECK(count_files(dir / "out", "trace_") == 15);
  CHECK(count_files(dir / "out", "summary") == 1);
  for (const auto& e : fs::directory_iterator(dir / "out"))
    if (e.path().filename().string().rfind("trace_", 0) == 0)
      CHECK(accepted_gamma_violations(e.path()) == 0);
}

TEST_CASE("solve input errors exit with code 1") {
  const fs::path dir = testing::temp_dir("cli_solve_err");
  RunResult r = run("solve --gen relu:m=10,n=10,r=2 --method bcd,svd", dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("svd") != std::string::npos);

  r = run("solve --input " + (dir / "missing.mtx").string() + " --rank 2", dir);
  CHECK(r.code == 1);
  std::ofstream(dir / "bad.mtx") << "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 x\n";
  r = run("solve --input " + (dir / "bad.mtx").string() + " --rank 1", dir);
  CHECK(r.code == 1);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run("solve --gen relu:m=10,n=10,r=2 --seeds 1,1", dir).code == 1);
  CHECK(run("solve --gen relu:m=10,n=10,r=2 --alpha-bar 0.5", dir).code == 1);
  CHECK(run("solve --gen relu:m=10,n=10", dir).code == 1);
}

TEST_CASE("identical commands give identical traces") {
  const fs::path dir = testing::temp_dir("cli_determinism");
  const std::string args = "solve --gen relu:m=60,n=50,r=4,sigma=0.01 --method bcd,ebcd --seeds 1..2 "
                           "--maxit 80 --jobs 2 --out ";
  REQUIRE(run(args + (dir / "a").string(), dir).code == 0);
  REQUIRE(run(args + (dir / "b").string(), dir).code == 0);
  for (const std::string name : {"trace_bcd_seed1.csv", "trace_ebcd_seed1.csv",
                                 "trace_bcd_seed2.csv", "trace_ebcd_seed2.csv"}) {
    CHECK(without_elapsed(dir / "a" / name) == without_elapsed(dir / "b" / name));
  }
  CHECK(slurp(dir / "a" / "factors_ebcd_seed2.csv") == slurp(dir / "b" / "factors_ebcd_seed2.csv"));
}

TEST_CASE("output directory defaults to the environment variable") {
  const fs::path dir = testing::temp_dir("cli_env");
  const RunResult r = run("solve --gen relu:m=20,n=20,r=2 --maxit 5", dir,
                          "RELUMD_OUT_DIR=" + (dir / "env_out").string());
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "env_out" / "trace_ebcd_seed1.csv"));
}

TEST_CASE("config file values yield to flags") {
  const fs::path dir = testing::temp_dir("cli_config");
  std::ofstream(dir / "run.toml") << "[solve]\nmaxit = 3\ntol = 0\nmethod = \"bcd\"\n";
  const std::string base = "--config " + (dir / "run.toml").string() +
                           " solve --gen relu:m=20,n=20,r=2,sigma=0.1 --out ";
  REQUIRE(run(base + (dir / "a").string(), dir).code == 0);
  CHECK(read_csv(dir / "a" / "trace_bcd_seed1.csv").size() == 1 + 4);
  REQUIRE(run(base + (dir / "b").string() + " --maxit 6", dir).code == 0);
  CHECK(read_csv(dir / "b" / "trace_bcd_seed1.csv").size() == 1 + 7);
}

TEST_CASE("edmc table shape and full observation") {
  const fs::path dir = testing::temp_dir("cli_edmc");
  RunResult r = run("edmc --mode clustered --counts 8,8,8 --frac 0.3,0.6,0.9 --method bcd,ebcd "
                    "--seeds 1..3 --maxit 100 --jobs 4 --out " + (dir / "grid").string(),
                    dir);
  REQUIRE(r.code == 0);
  const auto table = read_csv(dir / "grid" / "edmc.csv");
  CHECK(table.front() ==
        std::vector<std::string>{"frac", "method", "runs", "mean_error", "median_error"});
  CHECK(table.size() == 1 + 3 * 2);
  CHECK(read_csv(dir / "grid" / "edmc_runs.csv").size() == 1 + 3 * 2 * 3);

  r = run("edmc --mode uniform --counts 30 --frac 1.0 --rank 5 --tol 1e-12 --maxit 5000 --out " +
              (dir / "full").string(),
          dir);
  REQUIRE(r.code == 0);
  const auto full = read_csv(dir / "full" / "edmc.csv");
  REQUIRE(full.size() == 2);
  CHECK(std::stod(full[1][4]) <= 1e-9);

  CHECK(run("edmc --frac 0", dir).code == 1);
  CHECK(run("edmc --mode spiral", dir).code == 1);
}

TEST_CASE("compress clamps the rank and reports the TSVD row") {
  const fs::path dir = testing::temp_dir("cli_compress");
  write_mtx(dir / "I.mtx", Matrix::Identity(64, 64));
  RunResult r = run("compress --input " + (dir / "I.mtx").string() +
                        " --ratio 0.5 --method ebcd --maxit 50 --out " + (dir / "id").string(),
                    dir);
  REQUIRE(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  const auto id = read_csv(dir / "id" / "compress.csv");
  CHECK(id.front() ==
        std::vector<std::string>{"method", "rank", "rel_error", "iterations", "elapsed_s"});
  REQUIRE(id.size() == 3);
  CHECK(id[1][1] == "1");
  CHECK(id[2][0] == "tsvd");

  r = run("compress --gen relu:m=60,n=60,r=3 --ratio 0.5 --maxit 300 --time-limit 20 --out " +
              (dir / "gen").string(),
          dir);
  REQUIRE(r.code == 0);
  const auto rows = read_csv(dir / "gen" / "compress.csv");
  REQUIRE(rows.size() == 5);
  const double tsvd = std::stod(rows[4][2]);
  for (int i = 1; i <= 3; ++i) CHECK(std::stod(rows[i][2]) <= tsvd + 1e-9);
}

TEST_CASE("embed recovers exact similarity structure") {
  const fs::path dir = testing::temp_dir("cli_embed");
  Rng rng(4);
  Matrix P(25, 2);
  for (Index i = 0; i < 25; ++i) P.row(i) << 4.0 + rng.uniform(), rng.uniform();
  write_dense_csv((dir / "pts.csv").string(), P);
  RunResult r = run("embed --input " + (dir / "pts.csv").string() +
                        " --tau 0.3 --rank 3 --tol 1e-12 --maxit 5000 --out " +
                        (dir / "exact").string(),
                    dir);
  REQUIRE(r.code == 0);
  const auto exact = read_csv(dir / "exact" / "embed.csv");
  REQUIRE(exact.size() == 2);
  CHECK(std::stod(exact[1][2]) <= 1e-6);

  write_dense_csv((dir / "cloud.csv").string(), rng.gaussian(30, 6));
  r = run("embed --input " + (dir / "cloud.csv").string() +
              " --tau 0.2 --rank 2,4,8 --method bcd,ebcd --maxit 30 --out " +
              (dir / "sweep").string(),
          dir);
  REQUIRE(r.code == 0);
  const auto sweep = read_csv(dir / "sweep" / "embed.csv");
  CHECK(sweep.front() == std::vector<std::string>{"rank", "method", "mad", "avg_iter_time",
                                                  "iterations", "gamma"});
  CHECK(sweep.size() == 1 + 3 * 2);

  CHECK(run("embed --input " + (dir / "pts.csv").string() + " --tau 1.5", dir).code == 1);
  CHECK(run("embed --input " + (dir / "pts.csv").string() + " --tau 0", dir).code == 1);
}

TEST_CASE("verify exit codes") {
  const fs::path dir = testing::temp_dir("cli_verify");
  RunResult r = run("verify", dir);
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  r = run("verify --json", dir);
  CHECK(r.code == 0);
  CHECK(r.out.find("\"all_passed\": true") != std::string::npos);
  r = run("verify --corrupt-ell 1e-3", dir);
  CHECK(r.code == 2);
  CHECK(r.out.find("FAIL") != std::string::npos);
}
