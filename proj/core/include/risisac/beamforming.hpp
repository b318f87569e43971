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

#include "risisac/geometry.hpp"
#include "risisac/linalg.hpp"
#include "risisac/ris_phase.hpp"
#include "risisac/scenario.hpp"

namespace risisac {

/// Prefactors of the post-MRT metrics: gamma = (P/sigma2) beta_G M |.|^2 and
/// P_k = P beta_G M |.|^2.
struct SystemConstants {
  double power = 1.0;   ///< P, linear (unit set by the scenario)
  double sigma2 = 1.0;  ///< noise power, same unit as P
  double beta_g = 1.0;
  int bs_antennas = 1;  ///< M

  double gain_prefactor() const { return power * beta_g * bs_antennas; }
  double snr_prefactor() const { return gain_prefactor() / sigma2; }
};

SystemConstants make_constants(const ScenarioConfig& cfg, const ChannelSet& channels);

struct TargetGain {
  double linear = 0.0;
  double db = 0.0;
};

struct Metrics {
  double snr_linear = 0.0;
  double snr_db = 0.0;
  std::vector<TargetGain> gains;
};

/// w* = sqrt(P) g1 / ||g1||. Throws DegenerateGeometry for g1 == 0.
ComplexVector mrt_beamformer(const ComplexVector& g1, double power);

/// Unfactored SNR |(G diag(v) h)^H w|^2 / sigma2 for an arbitrary beamformer,
/// with G = sqrt(beta_G) g1 g2^H formed densely.
double comm_snr_general(const ComplexVector& w, const ChannelSet& channels,
                        const ComplexVector& h_ue, const RisPhase& v, double sigma2);

/// (P/sigma2) beta_G M |h^H diag(v^H) g2|^2.
double comm_snr_mrt(const RisPhase& v, const ComplexVector& h_ue, const ComplexVector& g2,
                    const SystemConstants& consts);

/// P beta_G M |a_k^H diag(v^H) g2|^2.
double beampattern_gain(const RisPhase& v, const ComplexVector& a_k, const ComplexVector& g2,
                        const SystemConstants& consts);

/// a_k^H diag(v^H) G^H w w^H G diag(v) a_k for an arbitrary beamformer.
double beampattern_gain_general(const ComplexVector& w, const ChannelSet& channels,
                                const ComplexVector& a_k, const RisPhase& v);

/// Post-MRT SNR and per-target gains of a phase configuration.
Metrics evaluate_metrics(const RisPhase& v, const ChannelSet& channels,
                         const SystemConstants& consts);

}  // namespace risisac
