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

// File formats.
//
// Matrix Market: coordinate (real | integer | pattern, general | symmetric)
// and array (real | integer, general). Symmetric storage is expanded.
//
// Dense CSV: first line "m,n", then m comma-separated rows of n values.
//
// Factor CSV: first line "m,n,r", then the m rows of W (r values each),
// then the r rows of H (n values each).
//
// Values are written with 17 significant digits so that reading a file back
// reproduces every double bit-exactly.

#ifndef RELUMD_IO_HPP_
#define RELUMD_IO_HPP_

#include <string>

#include "relumd/core.hpp"

namespace relumd {

Matrix read_matrix_market_values(const std::string& path);
// Same, rejecting negative entries with DomainError.
ObservedMatrix read_matrix_market(const std::string& path);

Matrix read_dense_csv(const std::string& path);
void write_dense_csv(const std::string& path, const Matrix& A);

FactorPair read_factors(const std::string& path);
void write_factors(const std::string& path, const FactorPair& factors);

// "%.17g" rendering of v.
std::string format_double(double v);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace relumd

#endif  // RELUMD_IO_HPP_
