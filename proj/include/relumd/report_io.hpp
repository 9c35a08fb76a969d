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

#ifndef RELUMD_REPORT_IO_HPP_
#define RELUMD_REPORT_IO_HPP_

#include <string>

#include "relumd/solvers.hpp"

namespace relumd {

inline constexpr const char* kTraceHeader = "iter,gamma,alpha,delta,accepted,elapsed_s";

// One row per trace record under kTraceHeader. delta is "nan" on the
// initial row; accepted is 1 or 0.
std::string trace_csv(const SolveReport& report);
void write_trace_csv(const std::string& path, const SolveReport& report);

// Compact JSON object with method, stop reason, iteration count, final
// gamma, relative LS error, elapsed time and the KKT residual fields.
std::string summary_json(const SolveReport& report);

}  // namespace relumd

#endif  // RELUMD_REPORT_IO_HPP_
