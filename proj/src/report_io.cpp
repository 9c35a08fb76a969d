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

#include "relumd/report_io.hpp"

#include <cmath>

#include "json.hpp"
#include "relumd/io.hpp"

namespace relumd {

std::string trace_csv(const SolveReport& report) {
  std::string out = kTraceHeader;
  out += '\n';
  for (const TraceRecord& r : report.trace) {
    out += std::to_string(r.k);
    out += ',';
    out += format_double(r.gamma);
    out += ',';
    out += format_double(r.alpha);
    out += ',';
    out += std::isnan(r.delta) ? std::string("nan") : format_double(r.delta);
    out += r.accepted ? ",1," : ",0,";
    out += format_double(r.elapsed_s);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const std::string& path, const SolveReport& report) {
  write_file_atomic(path, trace_csv(report));
}

std::string summary_json(const SolveReport& report) {
  nlohmann::ordered_json j;
  j["method"] = std::string(method_name(report.method));
  j["stop_reason"] = std::string(stop_reason_name(report.stop));
  j["iterations"] = report.iterations;
  j["rank"] = report.factors.rank();
  j["gamma"] = report.gamma;
  j["ls_rel_error"] = report.ls_rel_error;
  j["elapsed_s"] = report.elapsed_s;
  j["kkt"] = {
      {"grad_W_norm", report.kkt.grad_W_norm},
      {"grad_H_norm", report.kkt.grad_H_norm},
      {"primal_eq", report.kkt.primal_eq},
      {"primal_ineq", report.kkt.primal_ineq},
      {"comp_slack", report.kkt.comp_slack},
      {"dual_feas", report.kkt.dual_feas},
  };
  return j.dump();
}

}  // namespace relumd
