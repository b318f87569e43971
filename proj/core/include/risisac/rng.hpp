// SPDX-License-Identifier: Apache-2.0
//
// risisac: closed-form RIS phase design for integrated sensing and communication
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <random>

#include "risisac/linalg.hpp"

namespace risisac {

/// SplitMix64 finalizer. Used to expand one user seed into independent child
/// streams: child i of seed s is splitmix64(s + (i + 1) * 0x9E3779B97F4A7C15).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded pseudo-random stream. Same seed gives a bit-identical sequence on a
/// given standard library. Not thread-safe; give each worker its own child.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  Rng child(std::uint64_t index) const { return Rng(child_seed(seed_, index)); }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  Complex complex_normal(double variance = 1.0);
  ComplexVector complex_normal_vector(Eigen::Index n, double variance = 1.0);
  RealVector uniform_vector(Eigen::Index n, double lo, double hi);
  /// Unit-modulus entries with i.i.d. uniform phases.
  ComplexVector random_phases(Eigen::Index n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace risisac
