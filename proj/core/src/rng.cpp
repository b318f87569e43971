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

#include "risisac/rng.hpp"

namespace risisac {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

Complex Rng::complex_normal(double variance) {
  const double s = std::sqrt(variance / 2.0);
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

ComplexVector Rng::complex_normal_vector(Eigen::Index n, double variance) {
  ComplexVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = complex_normal(variance);
  return out;
}

RealVector Rng::uniform_vector(Eigen::Index n, double lo, double hi) {
  RealVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = uniform(lo, hi);
  return out;
}

ComplexVector Rng::random_phases(Eigen::Index n) {
  ComplexVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = std::polar(1.0, uniform(-kPi, kPi));
  return out;
}

}  // namespace risisac
