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

#include "risisac/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "risisac/error.hpp"

namespace risisac {

ArrayGeometry ArrayGeometry::half_wavelength(int bs_antennas, int ris_rows, int ris_cols,
                                             double carrier_hz) {
  const double d = kSpeedOfLight / (2.0 * carrier_hz);
  return {bs_antennas, ris_rows, ris_cols, carrier_hz, d, d, d};
}

ArrayGeometry ArrayGeometry::from_scenario(const ScenarioConfig& cfg) {
  const double d = cfg.spacing();
  return {cfg.bs_antennas, cfg.ris_rows, cfg.ris_cols, cfg.carrier_hz, d, d, d};
}

double angle_from_positions(const Position& origin, const Position& point) {
  const double dx = point.x - origin.x;
  const double dy = point.y - origin.y;
  if (dx == 0.0 && dy == 0.0) {
    throw DegenerateGeometry("angle_from_positions: coincident points");
  }
  // atan2 returns -pi for (negative dx, -0.0); fold it onto +pi.
  const double a = std::atan2(dy, dx);
  return a <= -kPi ? kPi : a;
}

ComplexVector bs_steering(int bs_antennas, double theta_tx, const ArrayGeometry& geom) {
  if (bs_antennas < 1) throw ConfigError("bs_steering: M must be at least 1", "bs_antennas");
  const double k = geom.wavenumber();
  const double centre = (bs_antennas + 1) / 2.0;
  const double c = std::cos(theta_tx);
  ComplexVector g(bs_antennas);
  for (int m = 1; m <= bs_antennas; ++m) {
    g(m - 1) = std::polar(1.0, k * (m - centre) * geom.bs_spacing * c);
  }
  return g;
}

namespace {

// Shared by the two RIS steering forms; cos_sign selects the printed sign of
// the horizontal term.
ComplexVector ris_steering(const ArrayGeometry& geom, double theta, double cos_sign) {
  const int nh_count = geom.ris_cols;
  const int nv_count = geom.ris_rows;
  const int n_total = geom.ris_elements();
  const double k = geom.wavenumber();
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double v_centre = (nv_count + 1) / 2.0;
  const double h_centre = (nh_count + 1) / 2.0;
  ComplexVector out(n_total);
  for (int n = 0; n < n_total; ++n) {
    // One-based indices so the array is centred like g1.
    const int n_h = n % nh_count + 1;
    const int n_v = n / nh_count + 1;
    const double delay = (n_v - v_centre) * geom.v_spacing * s +
                         cos_sign * (n_h - h_centre) * geom.h_spacing * c;
    out(n) = std::polar(1.0, -k * delay);
  }
  return out;
}

}  // namespace

ComplexVector ris_steering_tx(const ArrayGeometry& geom, double theta) {
  return ris_steering(geom, theta, +1.0);
}

ComplexVector ris_steering_rx(const ArrayGeometry& geom, double theta) {
  return ris_steering(geom, theta, -1.0);
}

double path_loss_linear(double reference_loss_db, double exponent_coeff, double distance_m) {
  if (!(distance_m > 0.0)) throw DegenerateGeometry("path_loss_linear: distance must be positive");
  return std::pow(10.0, -(reference_loss_db + exponent_coeff * std::log10(distance_m)) / 10.0);
}

ComplexVector rician_user_channel(const ComplexVector& a_ue, double kappa, double beta_ue,
                                  Rng& rng) {
  if (kappa < 0.0) throw ConfigError("rician_user_channel: kappa must be nonnegative", "rician_kappa");
  const double k = std::min(kappa, kMaxRicianKappa);
  const double w_los = std::sqrt(k / (1.0 + k));
  const double w_nlos = std::sqrt(1.0 / (1.0 + k));
  const ComplexVector nlos = rng.complex_normal_vector(a_ue.size(), beta_ue);
  return w_los * std::sqrt(beta_ue) * a_ue + w_nlos * nlos;
}

ComplexMatrix ChannelSet::bs_ris_matrix() const {
  return std::sqrt(beta_g) * g1 * g2.adjoint();
}

double target_angle(const ScenarioConfig& cfg, int k) {
  const auto& t = cfg.targets.at(static_cast<std::size_t>(k));
  if (const auto* a = std::get_if<TargetAngle>(&t.location)) return deg_to_rad(a->degrees);
  return angle_from_positions(cfg.ris_pos, std::get<Position>(t.location));
}

namespace {
double distance(const Position& a, const Position& b) { return std::hypot(b.x - a.x, b.y - a.y); }
}  // namespace

ChannelSet build_channels(const ScenarioConfig& cfg, Rng& rng) {
  const ArrayGeometry geom = ArrayGeometry::from_scenario(cfg);
  ChannelSet ch;
  ch.theta_tx = angle_from_positions(cfg.bs_pos, cfg.ris_pos);
  ch.theta_ue = angle_from_positions(cfg.ris_pos, cfg.ue_pos);
  ch.beta_g = path_loss_linear(cfg.reference_loss_db, cfg.bs_ris_loss_exponent,
                               distance(cfg.bs_pos, cfg.ris_pos));
  ch.beta_ue = path_loss_linear(cfg.reference_loss_db, cfg.ris_ue_loss_exponent,
                                distance(cfg.ris_pos, cfg.ue_pos));
  ch.g1 = bs_steering(cfg.bs_antennas, ch.theta_tx, geom);
  ch.g2 = ris_steering_tx(geom, ch.theta_tx);
  ch.a_ue = ris_steering_rx(geom, ch.theta_ue);
  ch.h_ue = rician_user_channel(ch.a_ue, cfg.rician_kappa, ch.beta_ue, rng);
  for (int k = 0; k < cfg.target_count(); ++k) {
    const double theta = target_angle(cfg, k);
    ch.theta_targets.push_back(theta);
    ch.a_targets.push_back(ris_steering_rx(geom, theta));
  }
  return ch;
}

}  // namespace risisac
