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

// relumd command-line harness. Links only the C interface.
//
// Exit codes: 0 completed, 1 input or configuration error, 2 verification
// failure.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "relumd/relumd.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;

// ---- C handle ownership ----

struct MatrixDeleter {
  void operator()(rmd_matrix* m) const { rmd_matrix_free(m); }
};
struct ConfigDeleter {
  void operator()(rmd_config* c) const { rmd_config_free(c); }
};
struct ReportDeleter {
  void operator()(rmd_report* r) const { rmd_report_free(r); }
};
struct VerifyDeleter {
  void operator()(rmd_verify_result* v) const { rmd_verify_free(v); }
};
using MatrixPtr = std::unique_ptr<rmd_matrix, MatrixDeleter>;
using ConfigPtr = std::unique_ptr<rmd_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<rmd_report, ReportDeleter>;
using VerifyPtr = std::unique_ptr<rmd_verify_result, VerifyDeleter>;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(rmd_status s, const std::string& context) {
  if (s != RMD_OK) throw InputError(context + ": " + rmd_last_error());
}

MatrixPtr take(rmd_matrix* m) { return MatrixPtr(m); }

// ---- flag parsing helpers ----

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size() || s.front() == '-') throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("invalid " + what + " '" + s + "'");
  }
}

double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("invalid " + what + " '" + s + "'");
  }
}

// "3", "1,4,9" or "1..5".
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> out;
  for (const std::string& part : split(spec, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_u64(part, "seed"));
      continue;
    }
    const std::uint64_t lo = parse_u64(part.substr(0, dots), "seed");
    const std::uint64_t hi = parse_u64(part.substr(dots + 2), "seed");
    if (hi < lo) throw InputError("empty seed range '" + part + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
  }
  if (out.empty()) throw InputError("no seeds given");
  std::vector<std::uint64_t> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("seeds must be distinct");
  return out;
}

std::vector<rmd_method> parse_methods(const std::string& spec) {
  std::vector<rmd_method> out;
  for (const std::string& name : split(spec, ',')) {
    rmd_method m;
    check(rmd_method_parse(name.c_str(), &m), "--method");
    out.push_back(m);
  }
  if (out.empty()) throw InputError("--method: at least one method required");
  return out;
}

std::vector<double> parse_reals(const std::string& spec, const std::string& what) {
  std::vector<double> out;
  for (const std::string& s : split(spec, ',')) out.push_back(parse_real(s, what));
  if (out.empty()) throw InputError(what + ": no values given");
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& spec, const std::string& what) {
  std::vector<std::size_t> out;
  for (const std::string& s : split(spec, ',')) out.push_back(parse_u64(s, what));
  if (out.empty()) throw InputError(what + ": no values given");
  return out;
}

// relu:m=..,n=..,r=..,sigma=..
struct ReluSpec {
  std::size_t m = 0, n = 0, r = 0;
  double sigma = 0.0;
};

ReluSpec parse_gen(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (kind != "relu") throw InputError("--gen: unknown generator '" + kind + "' (expected relu)");
  ReluSpec g;
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    for (const std::string& item : split(spec.substr(colon + 1), ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("--gen: expected key=value, got '" + item + "'");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  for (const auto& [k, v] : kv) {
    if (k == "m") g.m = parse_u64(v, "m");
    else if (k == "n") g.n = parse_u64(v, "n");
    else if (k == "r") g.r = parse_u64(v, "r");
    else if (k == "sigma") g.sigma = parse_real(v, "sigma");
    else throw InputError("--gen: unknown key '" + k + "'");
  }
  if (g.m == 0 || g.n == 0 || g.r == 0) throw InputError("--gen: m, n and r are required");
  return g;
}

MatrixPtr load_matrix(const std::string& path) {
  rmd_matrix* m = nullptr;
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".csv")
    check(rmd_matrix_read_csv(path.c_str(), &m), path);
  else
    check(rmd_matrix_read_mm(path.c_str(), &m), path);
  return take(m);
}

// ---- shared solver flags ----

struct SolverFlags {
  std::size_t rank = 0;  // 0: derive from the problem
  double tol = 1e-9;
  long maxit = 1000;
  double time_limit = -1.0;
  double alpha_bar = 4.0;
  double mu = 0.3;
  double delta_bar = 0.8;
};

void add_solver_flags(CLI::App* app, SolverFlags& f, bool with_rank) {
  if (with_rank) app->add_option("--rank", f.rank, "Factorization rank");
  app->add_option("--tol", f.tol, "Relative residual tolerance")->capture_default_str();
  app->add_option("--maxit", f.maxit, "Iteration cap")->capture_default_str();
  app->add_option("--time-limit", f.time_limit, "Wall-clock seconds per run (negative: none)");
  app->add_option("--alpha-bar", f.alpha_bar, "Extrapolation upper bound")->capture_default_str();
  app->add_option("--mu", f.mu, "Initial extrapolation increment")->capture_default_str();
  app->add_option("--delta-bar", f.delta_bar, "Sufficient decrease threshold")
      ->capture_default_str();
}

ConfigPtr make_config(const SolverFlags& f, std::size_t rank, std::uint64_t seed) {
  rmd_config* raw = nullptr;
  check(rmd_config_create(&raw), "config");
  ConfigPtr c(raw);
  check(rmd_config_set_rank(c.get(), rank), "--rank");
  check(rmd_config_set_tol(c.get(), f.tol), "--tol");
  check(rmd_config_set_maxit(c.get(), f.maxit), "--maxit");
  check(rmd_config_set_time_limit(c.get(), f.time_limit), "--time-limit");
  check(rmd_config_set_extrapolation(c.get(), f.alpha_bar, f.mu, f.delta_bar), "extrapolation");
  check(rmd_config_set_seed(c.get(), seed), "seed");
  return c;
}

ReportPtr run_solver(const rmd_matrix* x, const rmd_config* c, rmd_method m) {
  rmd_report* r = nullptr;
  check(rmd_solve(x, c, m, &r), std::string("solve (") + rmd_method_name(m) + ")");
  return ReportPtr(r);
}

fs::path output_dir(const std::string& flag) {
  fs::path dir = flag;
  if (dir.empty()) {
    const char* env = std::getenv("RELUMD_OUT_DIR");
    dir = env && *env ? env : "relumd_out";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

void write_atomic(const fs::path& path, const std::string& contents) {
  check(rmd_write_file_atomic(path.string().c_str(), contents.c_str()), path.string());
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Runs task(i) for i in [0, n) on up to `jobs` threads. The first exception
// is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& task) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

// ---- subcommands ----

struct SolveArgs {
  std::string gen, input, methods = "ebcd", seeds = "1", out;
  unsigned jobs = 1;
  SolverFlags solver;
};

int cmd_solve(const SolveArgs& a) {
  if (a.gen.empty() == a.input.empty()) throw InputError("solve: give exactly one of --gen or --input");
  const std::vector<rmd_method> methods = parse_methods(a.methods);
  const std::vector<std::uint64_t> seeds = parse_seeds(a.seeds);
  std::optional<ReluSpec> gen;
  MatrixPtr input;
  std::size_t rank = a.solver.rank;
  if (!a.gen.empty()) {
    gen = parse_gen(a.gen);
    if (rank == 0) rank = gen->r;
  } else {
    input = load_matrix(a.input);
  }
  if (rank == 0) throw InputError("solve: --rank is required with --input");
  const fs::path dir = output_dir(a.out);

  struct Run {
    std::uint64_t seed;
    rmd_method method;
    std::string summary;
    long iterations = 0;
    double gamma = 0.0;
    std::string stop;
  };
  std::vector<Run> runs;
  for (std::uint64_t s : seeds)
    for (rmd_method m : methods) runs.push_back({s, m, "", 0, 0.0, ""});

  parallel_for(runs.size(), a.jobs, [&](std::size_t i) {
    Run& run = runs[i];
    MatrixPtr generated;
    const rmd_matrix* x = input.get();
    if (gen) {
      rmd_matrix* raw = nullptr;
      check(rmd_gen_relu(gen->m, gen->n, gen->r, gen->sigma, run.seed, &raw, nullptr), "--gen");
      generated = take(raw);
      x = generated.get();
    }
    const ConfigPtr cfg = make_config(a.solver, rank, run.seed);
    const ReportPtr rep = run_solver(x, cfg.get(), run.method);
    const std::string stem = std::string(rmd_method_name(run.method)) + "_seed" +
                             std::to_string(run.seed);
    check(rmd_report_write_trace(rep.get(), (dir / ("trace_" + stem + ".csv")).string().c_str()),
          "trace");
    check(rmd_report_write_factors(rep.get(),
                                   (dir / ("factors_" + stem + ".csv")).string().c_str()),
          "factors");
    const std::string js = rmd_report_summary_json(rep.get());
    run.summary = "{\"seed\":" + std::to_string(run.seed) + "," + js.substr(1);
    run.iterations = rmd_report_iterations(rep.get());
    run.gamma = rmd_report_gamma(rep.get());
    run.stop = rmd_report_stop_reason(rep.get());
  });

  std::string summary = "[\n";
  for (std::size_t i = 0; i < runs.size(); ++i)
    summary += "  " + runs[i].summary + (i + 1 < runs.size() ? ",\n" : "\n");
  summary += "]\n";
  write_atomic(dir / "summary.json", summary);

  std::printf("%-6s %8s %8s %24s %6s\n", "method", "seed", "iters", "gamma", "stop");
  for (const Run& r : runs)
    std::printf("%-6s %8llu %8ld %24.17g %6s\n", rmd_method_name(r.method),
                static_cast<unsigned long long>(r.seed), r.iterations, r.gamma, r.stop.c_str());
  std::printf("wrote %zu trace files and summary.json to %s\n", runs.size(), dir.string().c_str());
  return kExitOk;
}

struct EdmcArgs {
  std::string mode = "clustered", counts, fracs = "0.5", methods = "ebcd", seeds = "1", out;
  unsigned jobs = 1;
  SolverFlags solver;
};

int cmd_edmc(EdmcArgs a) {
  if (a.solver.rank == 0) a.solver.rank = 5;
  rmd_point_mode mode;
  if (a.mode == "uniform")
    mode = RMD_POINTS_UNIFORM;
  else if (a.mode == "clustered")
    mode = RMD_POINTS_CLUSTERED;
  else
    throw InputError("--mode: unknown point mode '" + a.mode + "' (expected uniform or clustered)");
  std::vector<std::size_t> counts;
  if (!a.counts.empty()) counts = parse_sizes(a.counts, "--counts");
  const std::vector<double> fracs = parse_reals(a.fracs, "--frac");
  for (double f : fracs)
    if (!(f > 0.0 && f <= 1.0)) throw InputError("--frac: values must lie in (0, 1]");
  const std::vector<rmd_method> methods = parse_methods(a.methods);
  const std::vector<std::uint64_t> seeds = parse_seeds(a.seeds);
  const fs::path dir = output_dir(a.out);

  struct Run {
    double frac;
    rmd_method method;
    std::uint64_t seed;
    double error = 0.0, gamma = 0.0;
    long iterations = 0;
  };
  std::vector<Run> runs;
  for (double f : fracs)
    for (rmd_method m : methods)
      for (std::uint64_t s : seeds) runs.push_back({f, m, s});

  parallel_for(runs.size(), a.jobs, [&](std::size_t i) {
    Run& run = runs[i];
    rmd_matrix *points = nullptr, *theta = nullptr, *x = nullptr;
    check(rmd_gen_points(mode, counts.empty() ? nullptr : counts.data(), counts.size(), run.seed,
                         &points),
          "points");
    const MatrixPtr p = take(points);
    check(rmd_edm(p.get(), &theta), "edm");
    const MatrixPtr t = take(theta);
    double d = 0.0;
    check(rmd_observe_below(t.get(), run.frac, &x, &d), "observe");
    const MatrixPtr xm = take(x);
    const ConfigPtr cfg = make_config(a.solver, a.solver.rank, run.seed);
    check(rmd_config_set_model(cfg.get(), RMD_MODEL_SHIFTED_NEGATIVE, d), "model");
    const ReportPtr rep = run_solver(xm.get(), cfg.get(), run.method);
    check(rmd_report_edmc_error(rep.get(), t.get(), &run.error), "edmc error");
    run.gamma = rmd_report_gamma(rep.get());
    run.iterations = rmd_report_iterations(rep.get());
  });

  std::string detail = "frac,method,seed,error,iterations,gamma\n";
  std::string table = "frac,method,runs,mean_error,median_error\n";
  std::size_t i = 0;
  for (double f : fracs)
    for (rmd_method m : methods) {
      std::vector<double> errors;
      for (std::size_t k = 0; k < seeds.size(); ++k, ++i) {
        const Run& r = runs[i];
        errors.push_back(r.error);
        detail += fmt(f) + "," + rmd_method_name(m) + "," + std::to_string(r.seed) + "," +
                  fmt(r.error) + "," + std::to_string(r.iterations) + "," + fmt(r.gamma) + "\n";
      }
      double mean = 0.0;
      for (double e : errors) mean += e / static_cast<double>(errors.size());
      const double med = median(errors);
      table += fmt(f) + "," + rmd_method_name(m) + "," + std::to_string(errors.size()) + "," +
               fmt(mean) + "," + fmt(med) + "\n";
      std::printf("frac=%-5g %-6s median relative error %.3e\n", f, rmd_method_name(m), med);
    }
  write_atomic(dir / "edmc_runs.csv", detail);
  write_atomic(dir / "edmc.csv", table);
  return kExitOk;
}

struct CompressArgs {
  std::string gen, input, methods = "bcd,ebcd,naive", out;
  double ratio = 0.5;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  SolverFlags solver;
};

int cmd_compress(const CompressArgs& a) {
  if (a.gen.empty() == a.input.empty())
    throw InputError("compress: give exactly one of --gen or --input");
  const std::vector<rmd_method> methods = parse_methods(a.methods);
  MatrixPtr x;
  if (!a.gen.empty()) {
    const ReluSpec g = parse_gen(a.gen);
    rmd_matrix* raw = nullptr;
    check(rmd_gen_relu(g.m, g.n, g.r, g.sigma, a.seed, &raw, nullptr), "--gen");
    x = take(raw);
  } else {
    x = load_matrix(a.input);
  }
  std::size_t rank = 0;
  int clamped = 0;
  check(rmd_compression_rank(x.get(), a.ratio, &rank, &clamped), "--ratio");
  if (clamped)
    std::fprintf(stderr, "warning: compression rank formula gave 0 at ratio %g; using rank 1\n",
                 a.ratio);
  const fs::path dir = output_dir(a.out);

  struct Row {
    rmd_method method;
    double error = 0.0, elapsed = 0.0;
    long iterations = 0;
  };
  std::vector<Row> rows;
  for (rmd_method m : methods) rows.push_back({m});
  parallel_for(rows.size(), a.jobs, [&](std::size_t i) {
    const ConfigPtr cfg = make_config(a.solver, rank, a.seed);
    const ReportPtr rep = run_solver(x.get(), cfg.get(), rows[i].method);
    rows[i].error = rmd_report_ls_rel_error(rep.get());
    rows[i].iterations = rmd_report_iterations(rep.get());
    rows[i].elapsed = rmd_report_elapsed(rep.get());
  });
  double tsvd_error = 0.0;
  check(rmd_tsvd_baseline(x.get(), rank, &tsvd_error, nullptr), "tsvd");

  std::string table = "method,rank,rel_error,iterations,elapsed_s\n";
  for (const Row& r : rows)
    table += std::string(rmd_method_name(r.method)) + "," + std::to_string(rank) + "," +
             fmt(r.error) + "," + std::to_string(r.iterations) + "," + fmt(r.elapsed) + "\n";
  table += "tsvd," + std::to_string(rank) + "," + fmt(tsvd_error) + ",0,0\n";
  write_atomic(dir / "compress.csv", table);
  std::fputs(table.c_str(), stdout);
  return kExitOk;
}

struct EmbedArgs {
  std::string input, gen_points, methods = "ebcd", ranks = "2,4,8", out;
  double tau = -1.0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  SolverFlags solver;
};

int cmd_embed(const EmbedArgs& a) {
  if (!(a.tau > 0.0 && a.tau < 1.0)) throw InputError("--tau must lie in (0, 1)");
  if (a.input.empty() == a.gen_points.empty())
    throw InputError("embed: give exactly one of --input or --gen-points");
  const std::vector<rmd_method> methods = parse_methods(a.methods);
  const std::vector<std::size_t> ranks = parse_sizes(a.ranks, "--rank");

  MatrixPtr points;
  if (!a.input.empty()) {
    rmd_matrix* raw = nullptr;
    check(rmd_matrix_read_csv(a.input.c_str(), &raw), a.input);
    points = take(raw);
  } else {
    rmd_matrix* raw = nullptr;
    const rmd_point_mode mode = a.gen_points == "uniform" ? RMD_POINTS_UNIFORM : RMD_POINTS_CLUSTERED;
    if (a.gen_points != "uniform" && a.gen_points != "clustered")
      throw InputError("--gen-points: expected uniform or clustered");
    check(rmd_gen_points(mode, nullptr, 0, a.seed, &raw), "points");
    points = take(raw);
  }
  const fs::path dir = output_dir(a.out);
  const std::string header = "rank,method,mad,avg_iter_time,iterations,gamma\n";

  double probe = 0.0;
  if (rmd_mad(points.get(), points.get(), a.tau, &probe) != RMD_OK) {
    std::fprintf(stderr, "skipped: %s\n", rmd_last_error());
    write_atomic(dir / "embed.csv", header);
    return kExitOk;
  }
  rmd_matrix* sim = nullptr;
  check(rmd_tsm_similarity(points.get(), a.tau, &sim), "similarity");
  const MatrixPtr x = take(sim);

  struct Row {
    std::size_t rank;
    rmd_method method;
    double mad = 0.0, per_iter = 0.0, gamma = 0.0;
    long iterations = 0;
  };
  std::vector<Row> rows;
  for (std::size_t r : ranks)
    for (rmd_method m : methods) rows.push_back({r, m});
  parallel_for(rows.size(), a.jobs, [&](std::size_t i) {
    Row& row = rows[i];
    const ConfigPtr cfg = make_config(a.solver, row.rank, a.seed);
    const ReportPtr rep = run_solver(x.get(), cfg.get(), row.method);
    rmd_matrix *theta = nullptr, *emb = nullptr;
    check(rmd_report_product(rep.get(), &theta), "product");
    const MatrixPtr t = take(theta);
    check(rmd_embed_from_similarity(t.get(), a.tau, row.rank, &emb), "embedding");
    const MatrixPtr e = take(emb);
    check(rmd_mad(points.get(), e.get(), a.tau, &row.mad), "mad");
    row.iterations = rmd_report_iterations(rep.get());
    row.per_iter = rmd_report_elapsed(rep.get()) / static_cast<double>(std::max(1L, row.iterations));
    row.gamma = rmd_report_gamma(rep.get());
  });

  std::string table = header;
  for (const Row& r : rows)
    table += std::to_string(r.rank) + "," + rmd_method_name(r.method) + "," + fmt(r.mad) + "," +
             fmt(r.per_iter) + "," + std::to_string(r.iterations) + "," + fmt(r.gamma) + "\n";
  write_atomic(dir / "embed.csv", table);
  std::fputs(table.c_str(), stdout);
  return kExitOk;
}

struct VerifyArgs {
  std::uint64_t seed = 20240601;
  bool json = false;
  double corrupt_ell = 0.0;
};

int cmd_verify(const VerifyArgs& a) {
  rmd_verify_result* raw = nullptr;
  check(rmd_verify(a.seed, a.corrupt_ell, &raw), "verify");
  const VerifyPtr v(raw);
  const bool ok = rmd_verify_all_passed(v.get()) != 0;
  if (a.json) {
    std::puts(rmd_verify_json(v.get()));
  } else {
    std::printf("%-26s %-4s %14s %14s\n", "check", "", "worst", "threshold");
    for (std::size_t i = 0; i < rmd_verify_count(v.get()); ++i) {
      const char* name = nullptr;
      int passed = 0;
      double worst = 0.0, threshold = 0.0;
      check(rmd_verify_check(v.get(), i, &name, &passed, &worst, &threshold, nullptr), "verify");
      std::printf("%-26s %-4s %14.6e %14.6e\n", name, passed ? "PASS" : "FAIL", worst, threshold);
    }
    std::printf("%s\n", ok ? "all checks passed" : "verification FAILED");
  }
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relumd: ReLU matrix decomposition experiments"};
  app.set_config("--config", "", "TOML/INI file with flag values; command-line flags win");
  app.require_subcommand(1);
  app.set_version_flag("--version", rmd_version());

  SolveArgs solve;
  CLI::App* s = app.add_subcommand("solve", "Run solvers on a generated or ingested matrix");
  s->add_option("--gen", solve.gen, "Generator spec, e.g. relu:m=200,n=200,r=10,sigma=0");
  s->add_option("--input", solve.input, "Matrix Market (.mtx) or dense CSV (.csv) input");
  s->add_option("--method", solve.methods, "Comma list of bcd, ebcd, naive")->capture_default_str();
  s->add_option("--seeds,--seed", solve.seeds, "Seeds: 3, 1,4,9 or 1..5")->capture_default_str();
  s->add_option("--out", solve.out, "Output directory (default $RELUMD_OUT_DIR or relumd_out)");
  s->add_option("--jobs", solve.jobs, "Parallel runs")->capture_default_str();
  add_solver_flags(s, solve.solver, true);

  EdmcArgs edmc;
  CLI::App* e = app.add_subcommand("edmc", "Distance matrix completion from thresholded entries");
  e->add_option("--mode", edmc.mode, "uniform or clustered")->capture_default_str();
  e->add_option("--counts", edmc.counts, "Points per cluster, comma list (default recipe)");
  e->add_option("--frac", edmc.fracs, "Observed fractions, comma list")->capture_default_str();
  e->add_option("--method", edmc.methods, "Comma list of bcd, ebcd, naive")->capture_default_str();
  e->add_option("--seeds,--seed", edmc.seeds, "Seeds: 3, 1,4,9 or 1..5")->capture_default_str();
  e->add_option("--out", edmc.out, "Output directory");
  e->add_option("--jobs", edmc.jobs, "Parallel runs")->capture_default_str();
  add_solver_flags(e, edmc.solver, true);

  CompressArgs comp;
  CLI::App* c = app.add_subcommand("compress", "Compress a sparse matrix at a storage ratio");
  c->add_option("--gen", comp.gen, "Generator spec, e.g. relu:m=200,n=200,r=10,sigma=0");
  c->add_option("--input", comp.input, "Matrix Market (.mtx) or dense CSV (.csv) input");
  c->add_option("--ratio", comp.ratio, "Storage ratio")->capture_default_str();
  c->add_option("--method", comp.methods, "Comma list of bcd, ebcd, naive")->capture_default_str();
  c->add_option("--seed", comp.seed, "Initialization seed")->capture_default_str();
  c->add_option("--out", comp.out, "Output directory");
  c->add_option("--jobs", comp.jobs, "Parallel runs")->capture_default_str();
  add_solver_flags(c, comp.solver, false);

  EmbedArgs emb;
  CLI::App* m = app.add_subcommand("embed", "Threshold similarity embedding and MAD");
  m->add_option("--input", emb.input, "Dense CSV of points (one row per point)");
  m->add_option("--gen-points", emb.gen_points, "Generate points: uniform or clustered");
  m->add_option("--tau", emb.tau, "Similarity threshold in (0, 1)")->required();
  m->add_option("--rank", emb.ranks, "Rank sweep, comma list")->capture_default_str();
  m->add_option("--method", emb.methods, "Comma list of bcd, ebcd, naive")->capture_default_str();
  m->add_option("--seed", emb.seed, "Seed")->capture_default_str();
  m->add_option("--out", emb.out, "Output directory");
  m->add_option("--jobs", emb.jobs, "Parallel runs")->capture_default_str();
  add_solver_flags(m, emb.solver, false);

  VerifyArgs ver;
  CLI::App* v = app.add_subcommand("verify", "Run the theory oracle suite");
  v->add_option("--seed", ver.seed, "Seed")->capture_default_str();
  v->add_flag("--json", ver.json, "Machine-readable output");
  v->add_option("--corrupt-ell", ver.corrupt_ell)->group("");  // failure-path testing only

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*e) return cmd_edmc(edmc);
    if (*c) return cmd_compress(comp);
    if (*m) return cmd_embed(emb);
    if (*v) return cmd_verify(ver);
  } catch (const InputError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitInput;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitInput;
  }
  return kExitInput;
}
