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

#ifndef RELUMD_RNG_HPP_
#define RELUMD_RNG_HPP_

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace relumd {

// Named substreams so that, for one user-facing seed, the problem generator
// and the solver initialization never share random draws.
enum class Stream : std::uint64_t {
  kInit = 1,
  kReluFactors = 2,
  kReluNoise = 3,
  kPoints = 4,
  kTest = 5,
};

// Seedable, splittable generator with a fixed algorithm so traces are
// reproducible across compilers and standard libraries:
//   * engine: std::mt19937_64 (bit-exact by the C++ standard),
//   * uniform doubles: top 53 bits of one draw, scaled by 2^-53,
//   * normals: Box-Muller, consuming two uniforms per pair, caching the
//     second value.
// Substreams are seeded with splitmix64(seed ^ splitmix64(stream id)).
// std::normal_distribution is avoided because its algorithm is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t seed, Stream stream);

  // Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

  // Derived independent generator.
  Rng split(std::uint64_t stream_id) const;

  // rows x cols matrix of i.i.d. standard normals, filled column-major.
  Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace relumd

#endif  // RELUMD_RNG_HPP_
