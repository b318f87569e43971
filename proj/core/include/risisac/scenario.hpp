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
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace risisac {

/// 2-D position in meters.
struct Position {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Position&, const Position&) = default;
};

/// Direction of a target as seen from the RIS, in degrees from the +x axis.
struct TargetAngle {
  double degrees = 0.0;
};

struct TargetSpec {
  std::variant<TargetAngle, Position> location;
  double weight = 0.0;  ///< zeta_k; the weights of a scenario sum to one
};

/// Regularization rule: adaptive is lambda = (1 - alpha^2) sigma_max,
/// fixed_fraction(c) is lambda = c sigma_max.
struct LambdaPolicy {
  enum class Kind { adaptive, fixed_fraction };
  Kind kind = Kind::adaptive;
  double fraction = 0.0;

  static LambdaPolicy adaptive() { return {}; }
  static LambdaPolicy fixed(double c) { return {Kind::fixed_fraction, c}; }
  /// Parses "adaptive" or "fixed:<c>". Throws ConfigError.
  static LambdaPolicy parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const LambdaPolicy&, const LambdaPolicy&) = default;
};

/// Linear unit that dBm figures are converted into. Transmit power enters the
/// scale sqrt(P M beta_G) of the stacked system while lambda is tied to
/// sigma_max, so the choice changes how strongly a given lambda regularizes.
enum class PowerUnit { milliwatt, watt };

struct ScenarioConfig {
  double transmit_power_dbm = 30.0;
  double noise_power_dbm = -80.0;
  double carrier_hz = 10e9;
  int bs_antennas = 11;   ///< M
  int ris_rows = 21;      ///< N_V
  int ris_cols = 21;      ///< N_H
  double rician_kappa = 1.0;
  double reference_loss_db = 30.0;
  double bs_ris_loss_exponent = 22.0;
  double ris_ue_loss_exponent = 25.0;
  /// Element spacing for BS and RIS; unset means half a wavelength.
  std::optional<double> element_spacing_m;
  Position bs_pos{0.0, 0.0};
  Position ris_pos{30.0, 30.0};
  Position ue_pos{100.0, -20.0};
  std::vector<TargetSpec> targets;
  double alpha = 1.0;
  LambdaPolicy lambda_policy;
  std::uint64_t seed = 1;
  PowerUnit power_unit = PowerUnit::milliwatt;

  int ris_elements() const { return ris_rows * ris_cols; }
  int target_count() const { return static_cast<int>(targets.size()); }
  std::vector<double> weights() const;
  double spacing() const;
  /// Transmit and noise power in the configured linear unit.
  double transmit_power_linear() const;
  double noise_power_linear() const;
};

/// Simulation setup used throughout the reference experiments: two targets
/// at 65 and 90 degrees with equal weights, alpha = 1.
ScenarioConfig reference_scenario();

/// Checks every invariant without touching the solvers. Throws ConfigError
/// naming the offending field.
void validate(const ScenarioConfig& cfg);

/// JSON (snake_case keys, degrees, [x, y] positions). Keys absent from the
/// document keep the reference defaults, except `targets`, which is required.
ScenarioConfig scenario_from_json(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);
std::string scenario_to_json(const ScenarioConfig& cfg, int indent = 2);

std::string to_string(PowerUnit unit);

}  // namespace risisac
