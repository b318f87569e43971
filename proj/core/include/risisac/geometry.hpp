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

#include <vector>

#include "risisac/linalg.hpp"
#include "risisac/rng.hpp"
#include "risisac/scenario.hpp"

namespace risisac {

/// BS uniform linear array and RIS uniform planar array. Element n of the RIS
/// sits at horizontal index n mod N_H and vertical index floor(n / N_H).
struct ArrayGeometry {
  int bs_antennas = 1;  ///< M
  int ris_rows = 1;     ///< N_V
  int ris_cols = 1;     ///< N_H
  double carrier_hz = 10e9;
  double bs_spacing = 0.0;
  double h_spacing = 0.0;
  double v_spacing = 0.0;

  /// All spacings set to c / (2 f0).
  static ArrayGeometry half_wavelength(int bs_antennas, int ris_rows, int ris_cols,
                                       double carrier_hz);
  static ArrayGeometry from_scenario(const ScenarioConfig& cfg);

  int ris_elements() const { return ris_rows * ris_cols; }
  double wavenumber() const { return 2.0 * kPi * carrier_hz / kSpeedOfLight; }
};

/// Angle of `point` seen from `origin`, atan2(dy, dx) in (-pi, pi].
/// Throws DegenerateGeometry for coincident points.
double angle_from_positions(const Position& origin, const Position& point);

/// g1: BS steering vector, entry m has phase k (m - (M+1)/2) d_BS cos(theta),
/// m = 1..M.
ComplexVector bs_steering(int bs_antennas, double theta_tx, const ArrayGeometry& geom);

/// g2: RIS steering vector toward the BS,
/// exp(-j k ((n_V - (N_V+1)/2) d_V sin(theta) + (n_H - (N_H+1)/2) d_H cos(theta))).
ComplexVector ris_steering_tx(const ArrayGeometry& geom, double theta);

/// a(theta): RIS steering vector toward a target or the UE (LOS part),
/// exp(-j k ((n_V - (N_V+1)/2) d_V sin(theta) - (n_H - (N_H+1)/2) d_H cos(theta))).
/// The sign in front of the cosine term differs from ris_steering_tx.
ComplexVector ris_steering_rx(const ArrayGeometry& geom, double theta);

/// Multiplicative power gain for a loss of L0 + coeff log10(d) dB.
double path_loss_linear(double reference_loss_db, double exponent_coeff, double distance_m);

/// Rician RIS-UE channel: sqrt(kappa/(1+kappa)) sqrt(beta_ue) a_ue +
/// sqrt(1/(1+kappa)) h_nlos with h_nlos ~ CN(0, beta_ue I). Kappa is capped at
/// 1e12, so an infinite Rician factor degrades to the LOS-only channel.
ComplexVector rician_user_channel(const ComplexVector& a_ue, double kappa, double beta_ue,
                                  Rng& rng);

inline constexpr double kMaxRicianKappa = 1e12;

/// Deterministic and random channel quantities for one realization.
struct ChannelSet {
  double beta_g = 0.0;
  double beta_ue = 0.0;
  ComplexVector g1;  ///< length M
  ComplexVector g2;  ///< length N
  ComplexVector h_ue;  ///< length N
  ComplexVector a_ue;  ///< LOS steering toward the UE
  std::vector<ComplexVector> a_targets;  ///< length N each
  double theta_tx = 0.0;
  double theta_ue = 0.0;
  std::vector<double> theta_targets;

  /// Dense M x N BS-RIS channel sqrt(beta_G) g1 g2^H.
  ComplexMatrix bs_ris_matrix() const;
};

/// Angle of target k seen from the RIS, radians.
double target_angle(const ScenarioConfig& cfg, int k);

/// Builds every channel quantity of a scenario. The NLOS draw consumes `rng`.
ChannelSet build_channels(const ScenarioConfig& cfg, Rng& rng);

}  // namespace risisac
