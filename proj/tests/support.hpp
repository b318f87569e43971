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

#include <cmath>
#include <filesystem>
#include <string>

#include "risisac/beamforming.hpp"
#include "risisac/geometry.hpp"
#include "risisac/scenario.hpp"

namespace risisac::testing {

inline std::string scenario_path(const std::string& name) {
  return std::string(RISISAC_SCENARIO_DIR) + "/" + name;
}

/// Reference layout shrunk to a small RIS.
inline ScenarioConfig small_scenario(int rows, int cols, double alpha = 0.5) {
  ScenarioConfig cfg = reference_scenario();
  cfg.ris_rows = rows;
  cfg.ris_cols = cols;
  cfg.alpha = alpha;
  return cfg;
}

struct Realization {
  ScenarioConfig cfg;
  ChannelSet channels;
  SystemConstants consts;
};

inline Realization realize(const ScenarioConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  Realization r{cfg, build_channels(cfg, rng), {}};
  r.consts = make_constants(cfg, r.channels);
  return r;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

/// Fresh directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("risisac_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace risisac::testing
