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

#include "relumd/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "relumd/error.hpp"

namespace relumd {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view tok, std::size_t line) {
  const std::string s(trim(tok));
  if (s.empty()) throw ParseError("empty numeric field", line);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ParseError("invalid number '" + s + "'", line);
  if (errno == ERANGE && std::isinf(v)) throw ParseError("number out of range '" + s + "'", line);
  return v;
}

long long parse_int(std::string_view tok, std::size_t line) {
  const std::string s(trim(tok));
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    throw ParseError("invalid integer '" + s + "'", line);
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Reads the next non-blank line; returns false at EOF.
bool next_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) return true;
  }
  return false;
}

std::vector<long long> parse_header(std::string_view line, std::size_t lineno, std::size_t count) {
  const auto fields = split_csv(trim(line));
  if (fields.size() != count) {
    std::ostringstream msg;
    msg << "expected a header with " << count << " comma-separated integers";
    throw ParseError(msg.str(), lineno);
  }
  std::vector<long long> out;
  for (auto f : fields) {
    const long long v = parse_int(f, lineno);
    if (v < 0) throw ParseError("negative dimension in header", lineno);
    out.push_back(v);
  }
  return out;
}

void read_rows(std::istream& in, std::size_t& lineno, Index rows, Index cols, Matrix& A,
               Index row_offset) {
  std::string line;
  for (Index i = 0; i < rows; ++i) {
    if (!next_line(in, line, lineno)) throw ParseError("unexpected end of file", lineno + 1);
    const auto fields = split_csv(trim(line));
    if (static_cast<Index>(fields.size()) != cols) {
      std::ostringstream msg;
      msg << "expected " << cols << " values, found " << fields.size();
      throw ParseError(msg.str(), lineno);
    }
    for (Index j = 0; j < cols; ++j) A(row_offset + i, j) = parse_double(fields[j], lineno);
  }
}

void append_rows(std::string& out, const Matrix& A) {
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(A(i, j));
    }
    out += '\n';
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    if (!out.flush()) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path + "': " + ec.message());
}

Matrix read_matrix_market_values(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++lineno;

  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", lineno);
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw ParseError("unsupported object '" + object + "'", lineno);
  if (format != "coordinate" && format != "array")
    throw ParseError("unsupported format '" + format + "'", lineno);
  if (field != "real" && field != "integer" && field != "double" && field != "pattern")
    throw ParseError("unsupported field '" + field + "'", lineno);
  if (symmetry != "general" && symmetry != "symmetric")
    throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);
  if (format == "array" && (field == "pattern" || symmetry != "general"))
    throw ParseError("array format supports only general real/integer matrices", lineno);
  const bool pattern = field == "pattern";
  const bool symmetric = symmetry == "symmetric";

  do {
    if (!std::getline(in, line)) throw ParseError("missing size line", lineno + 1);
    ++lineno;
  } while (trim(line).empty() || trim(line).front() == '%');

  std::istringstream size_line(line);
  long long m = -1, n = -1, nnz = -1;
  size_line >> m >> n;
  if (format == "coordinate") size_line >> nnz;
  if (!size_line || m < 0 || n < 0 || (format == "coordinate" && nnz < 0))
    throw ParseError("malformed size line", lineno);
  if (symmetric && m != n) throw ParseError("symmetric matrix must be square", lineno);

  Matrix A = Matrix::Zero(m, n);
  if (format == "array") {
    // Column-major listing of all entries.
    for (long long k = 0; k < m * n; ++k) {
      if (!next_line(in, line, lineno)) throw ParseError("unexpected end of file", lineno + 1);
      if (trim(line).front() == '%') { --k; continue; }
      A(k % m, k / m) = parse_double(line, lineno);
    }
    return A;
  }

  SupportMask seen = SupportMask::Constant(m, n, false);
  for (long long k = 0; k < nnz; ++k) {
    if (!next_line(in, line, lineno)) throw ParseError("unexpected end of file", lineno + 1);
    if (trim(line).front() == '%') { --k; continue; }
    std::istringstream entry(line);
    long long i = 0, j = 0;
    std::string value_tok;
    entry >> i >> j;
    if (!pattern) entry >> value_tok;
    if (!entry) throw ParseError("malformed entry", lineno);
    std::string extra;
    if (entry >> extra) throw ParseError("trailing data in entry", lineno);
    if (i < 1 || i > m || j < 1 || j > n) throw ParseError("index out of bounds", lineno);
    if (symmetric && j > i) throw ParseError("symmetric storage must list the lower triangle", lineno);
    const double v = pattern ? 1.0 : parse_double(value_tok, lineno);
    if (seen(i - 1, j - 1)) throw ParseError("duplicate entry", lineno);
    seen(i - 1, j - 1) = true;
    A(i - 1, j - 1) = v;
    if (symmetric) A(j - 1, i - 1) = v;
  }
  return A;
}

ObservedMatrix read_matrix_market(const std::string& path) {
  Matrix A = read_matrix_market_values(path);
  if ((A.array() < 0.0).any()) {
    Index i = 0, j = 0;
    A.minCoeff(&i, &j);
    std::ostringstream msg;
    msg << path << ": negative entry at (" << i + 1 << "," << j + 1 << ")";
    throw DomainError(msg.str());
  }
  return ObservedMatrix::from_values(std::move(A));
}

Matrix read_dense_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError("empty file", 1);
  const auto dims = parse_header(line, lineno, 2);
  Matrix A(dims[0], dims[1]);
  read_rows(in, lineno, A.rows(), A.cols(), A, 0);
  if (next_line(in, line, lineno)) throw ParseError("unexpected extra row", lineno);
  return A;
}

void write_dense_csv(const std::string& path, const Matrix& A) {
  std::string out = std::to_string(A.rows()) + "," + std::to_string(A.cols()) + "\n";
  append_rows(out, A);
  write_file_atomic(path, out);
}

FactorPair read_factors(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw ParseError("empty file", 1);
  const auto dims = parse_header(line, lineno, 3);
  FactorPair f;
  f.W.resize(dims[0], dims[2]);
  f.H.resize(dims[2], dims[1]);
  read_rows(in, lineno, f.W.rows(), f.W.cols(), f.W, 0);
  read_rows(in, lineno, f.H.rows(), f.H.cols(), f.H, 0);
  if (next_line(in, line, lineno)) throw ParseError("unexpected extra row", lineno);
  return f;
}

void write_factors(const std::string& path, const FactorPair& f) {
  if (f.W.cols() != f.H.rows()) throw InvalidArgument("write_factors: inner dimensions differ");
  std::string out = std::to_string(f.W.rows()) + "," + std::to_string(f.H.cols()) + "," +
                    std::to_string(f.W.cols()) + "\n";
  append_rows(out, f.W);
  append_rows(out, f.H);
  write_file_atomic(path, out);
}

}  // namespace relumd
