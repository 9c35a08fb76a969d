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

// Fixed-seed battery of theory checks behind `relumd verify`.

#ifndef RELUMD_VERIFY_HPP_
#define RELUMD_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace relumd {

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  // Added to every ell(b) value before it is checked. Nonzero only to prove
  // that the harness can fail.
  double ell_perturbation = 0.0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // worst observed value of the checked quantity
  double threshold = 0.0;  // bound it is compared against
  std::string detail;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace relumd

#endif  // RELUMD_VERIFY_HPP_
