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

#include "risisac/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "risisac/error.hpp"
#include "risisac/linalg.hpp"

namespace risisac {

using nlohmann::json;

LambdaPolicy LambdaPolicy::parse(const std::string& text) {
  if (text == "adaptive") return adaptive();
  const std::string prefix = "fixed:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string num = text.substr(prefix.size());
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size() || !std::isfinite(c) || c < 0.0) {
      throw ConfigError("lambda_policy: fixed fraction must be a nonnegative number, got '" +
                            num + "'",
                        "lambda_policy");
    }
    return fixed(c);
  }
  throw ConfigError("lambda_policy: expected 'adaptive' or 'fixed:<c>', got '" + text + "'",
                    "lambda_policy");
}

std::string LambdaPolicy::to_string() const {
  if (kind == Kind::adaptive) return "adaptive";
  std::ostringstream os;
  os << "fixed:" << fraction;
  return os.str();
}

std::string to_string(PowerUnit unit) { return unit == PowerUnit::milliwatt ? "mW" : "W"; }

std::vector<double> ScenarioConfig::weights() const {
  std::vector<double> w;
  w.reserve(targets.size());
  for (const auto& t : targets) w.push_back(t.weight);
  return w;
}

double ScenarioConfig::spacing() const {
  return element_spacing_m.value_or(kSpeedOfLight / (2.0 * carrier_hz));
}

double ScenarioConfig::transmit_power_linear() const {
  const double offset = power_unit == PowerUnit::milliwatt ? 0.0 : 30.0;
  return db_to_linear(transmit_power_dbm - offset);
}

double ScenarioConfig::noise_power_linear() const {
  const double offset = power_unit == PowerUnit::milliwatt ? 0.0 : 30.0;
  return db_to_linear(noise_power_dbm - offset);
}

ScenarioConfig reference_scenario() {
  ScenarioConfig cfg;
  cfg.targets = {{TargetAngle{65.0}, 0.5}, {TargetAngle{90.0}, 0.5}};
  return cfg;
}

namespace {

void require(bool ok, const std::string& field, const std::string& msg) {
  if (!ok) throw ConfigError(field + ": " + msg, field);
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
  require(std::isfinite(cfg.transmit_power_dbm), "transmit_power_dbm", "must be finite");
  require(std::isfinite(cfg.noise_power_dbm), "noise_power_dbm", "must be finite");
  require(cfg.carrier_hz > 0.0 && std::isfinite(cfg.carrier_hz), "carrier_hz", "must be positive");
  require(cfg.bs_antennas >= 1, "bs_antennas", "must be at least 1");
  require(cfg.ris_rows >= 1, "ris_rows", "must be at least 1");
  require(cfg.ris_cols >= 1, "ris_cols", "must be at least 1");
  require(cfg.rician_kappa >= 0.0, "rician_kappa", "must be nonnegative");
  require(std::isfinite(cfg.reference_loss_db), "reference_loss_db", "must be finite");
  if (cfg.element_spacing_m) {
    require(*cfg.element_spacing_m > 0.0, "element_spacing_m", "must be positive");
  }
  require(cfg.alpha >= 0.0 && cfg.alpha <= 1.0, "alpha", "must lie in [0, 1]");
  if (cfg.lambda_policy.kind == LambdaPolicy::Kind::fixed_fraction) {
    require(cfg.lambda_policy.fraction >= 0.0, "lambda_policy", "fraction must be nonnegative");
  }
  require(!cfg.targets.empty(), "targets", "at least one target is required");
  double sum = 0.0;
  for (const auto& t : cfg.targets) {
    require(t.weight >= 0.0, "targets", "weights must be nonnegative");
    sum += t.weight;
    if (const auto* p = std::get_if<Position>(&t.location)) {
      require(!(*p == cfg.ris_pos), "targets", "target position coincides with the RIS");
    }
  }
  require(std::abs(sum - 1.0) <= 1e-12, "targets", "weights must sum to 1");
  require(!(cfg.bs_pos == cfg.ris_pos), "ris_pos", "BS and RIS positions coincide");
  require(!(cfg.ue_pos == cfg.ris_pos), "ue_pos", "UE and RIS positions coincide");
}

namespace {

double get_number(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(key) + ": expected a number", key);
  return v.get<double>();
}

int get_int(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string(key) + ": expected an integer", key);
  return v.get<int>();
}

Position get_position(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(key + ": expected an [x, y] pair in meters", key);
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

TargetSpec parse_target(const json& t, std::size_t index) {
  const std::string where = "targets[" + std::to_string(index) + "]";
  if (!t.is_object()) throw ConfigError(where + ": expected an object", "targets");
  for (const auto& [key, _] : t.items()) {
    if (key != "angle_deg" && key != "position" && key != "weight") {
      throw ConfigError(where + ": unknown key '" + key + "'", "targets");
    }
  }
  TargetSpec spec;
  const bool has_angle = t.contains("angle_deg");
  const bool has_pos = t.contains("position");
  if (has_angle == has_pos) {
    throw ConfigError(where + ": give exactly one of 'angle_deg' or 'position'", "targets");
  }
  if (has_angle) {
    if (!t["angle_deg"].is_number()) {
      throw ConfigError(where + ".angle_deg: expected a number", "targets");
    }
    spec.location = TargetAngle{t["angle_deg"].get<double>()};
  } else {
    spec.location = get_position(t["position"], where + ".position");
  }
  if (!t.contains("weight") || !t["weight"].is_number()) {
    throw ConfigError(where + ".weight: missing or not a number", "targets");
  }
  spec.weight = t["weight"].get<double>();
  return spec;
}

const std::set<std::string> kKnownKeys = {
    "transmit_power_dbm", "noise_power_dbm",      "carrier_hz",           "bs_antennas",
    "ris_rows",           "ris_cols",             "rician_kappa",         "reference_loss_db",
    "bs_ris_loss_exponent", "ris_ue_loss_exponent", "element_spacing_m",  "bs_pos",
    "ris_pos",            "ue_pos",               "targets",              "alpha",
    "lambda_policy",      "seed",                 "power_unit"};

}  // namespace

ScenarioConfig scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown key '" + key + "'", key);
  }
  if (!j.contains("targets")) throw ConfigError("missing required key 'targets'", "targets");

  ScenarioConfig cfg;
  if (j.contains("transmit_power_dbm")) cfg.transmit_power_dbm = get_number(j, "transmit_power_dbm");
  if (j.contains("noise_power_dbm")) cfg.noise_power_dbm = get_number(j, "noise_power_dbm");
  if (j.contains("carrier_hz")) cfg.carrier_hz = get_number(j, "carrier_hz");
  if (j.contains("bs_antennas")) cfg.bs_antennas = get_int(j, "bs_antennas");
  if (j.contains("ris_rows")) cfg.ris_rows = get_int(j, "ris_rows");
  if (j.contains("ris_cols")) cfg.ris_cols = get_int(j, "ris_cols");
  if (j.contains("rician_kappa")) cfg.rician_kappa = get_number(j, "rician_kappa");
  if (j.contains("reference_loss_db")) cfg.reference_loss_db = get_number(j, "reference_loss_db");
  if (j.contains("bs_ris_loss_exponent")) {
    cfg.bs_ris_loss_exponent = get_number(j, "bs_ris_loss_exponent");
  }
  if (j.contains("ris_ue_loss_exponent")) {
    cfg.ris_ue_loss_exponent = get_number(j, "ris_ue_loss_exponent");
  }
  if (j.contains("element_spacing_m") && !j["element_spacing_m"].is_null()) {
    cfg.element_spacing_m = get_number(j, "element_spacing_m");
  }
  if (j.contains("bs_pos")) cfg.bs_pos = get_position(j["bs_pos"], "bs_pos");
  if (j.contains("ris_pos")) cfg.ris_pos = get_position(j["ris_pos"], "ris_pos");
  if (j.contains("ue_pos")) cfg.ue_pos = get_position(j["ue_pos"], "ue_pos");
  if (j.contains("alpha")) cfg.alpha = get_number(j, "alpha");
  if (j.contains("lambda_policy")) {
    if (!j["lambda_policy"].is_string()) {
      throw ConfigError("lambda_policy: expected a string", "lambda_policy");
    }
    cfg.lambda_policy = LambdaPolicy::parse(j["lambda_policy"].get<std::string>());
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0)) {
      throw ConfigError("seed: expected a nonnegative integer", "seed");
    }
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("power_unit")) {
    const auto& u = j["power_unit"];
    if (u == "mW") {
      cfg.power_unit = PowerUnit::milliwatt;
    } else if (u == "W") {
      cfg.power_unit = PowerUnit::watt;
    } else {
      throw ConfigError("power_unit: expected \"mW\" or \"W\"", "power_unit");
    }
  }

  const auto& targets = j["targets"];
  if (!targets.is_array()) throw ConfigError("targets: expected an array", "targets");
  for (std::size_t i = 0; i < targets.size(); ++i) cfg.targets.push_back(parse_target(targets[i], i));
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

std::string scenario_to_json(const ScenarioConfig& cfg, int indent) {
  json j;
  j["transmit_power_dbm"] = cfg.transmit_power_dbm;
  j["noise_power_dbm"] = cfg.noise_power_dbm;
  j["carrier_hz"] = cfg.carrier_hz;
  j["bs_antennas"] = cfg.bs_antennas;
  j["ris_rows"] = cfg.ris_rows;
  j["ris_cols"] = cfg.ris_cols;
  j["rician_kappa"] = cfg.rician_kappa;
  j["reference_loss_db"] = cfg.reference_loss_db;
  j["bs_ris_loss_exponent"] = cfg.bs_ris_loss_exponent;
  j["ris_ue_loss_exponent"] = cfg.ris_ue_loss_exponent;
  if (cfg.element_spacing_m) j["element_spacing_m"] = *cfg.element_spacing_m;
  j["bs_pos"] = {cfg.bs_pos.x, cfg.bs_pos.y};
  j["ris_pos"] = {cfg.ris_pos.x, cfg.ris_pos.y};
  j["ue_pos"] = {cfg.ue_pos.x, cfg.ue_pos.y};
  json targets = json::array();
  for (const auto& t : cfg.targets) {
    json jt;
    if (const auto* a = std::get_if<TargetAngle>(&t.location)) {
      jt["angle_deg"] = a->degrees;
    } else {
      const auto& p = std::get<Position>(t.location);
      jt["position"] = {p.x, p.y};
    }
    jt["weight"] = t.weight;
    targets.push_back(jt);
  }
  j["targets"] = targets;
  j["alpha"] = cfg.alpha;
  j["lambda_policy"] = cfg.lambda_policy.to_string();
  j["seed"] = cfg.seed;
  j["power_unit"] = to_string(cfg.power_unit);
  return j.dump(indent);
}

}  // namespace risisac
