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

#include "risisac/beamforming.hpp"

#include "risisac/error.hpp"

namespace risisac {

RisPhase::RisPhase(const RealVector& phi) : phi_(phi.unaryExpr([](double x) { return wrap_phase(x); })), v_(phi_.size()) {
  for (Eigen::Index n = 0; n < phi_.size(); ++n) v_(n) = std::polar(1.0, phi_(n));
}

RisPhase RisPhase::from_complex(const ComplexVector& v) {
  RealVector phi(v.size());
  for (Eigen::Index n = 0; n < v.size(); ++n) phi(n) = v(n) == Complex{} ? 0.0 : std::arg(v(n));
  return RisPhase(phi);
}

SystemConstants make_constants(const ScenarioConfig& cfg, const ChannelSet& channels) {
  return {cfg.transmit_power_linear(), cfg.noise_power_linear(), channels.beta_g, cfg.bs_antennas};
}

ComplexVector mrt_beamformer(const ComplexVector& g1, double power) {
  const double norm = g1.norm();
  if (norm == 0.0) throw DegenerateGeometry("mrt_beamformer: zero BS steering vector");
  return std::sqrt(power) * g1 / norm;
}

double comm_snr_general(const ComplexVector& w, const ChannelSet& channels,
                        const ComplexVector& h_ue, const RisPhase& v, double sigma2) {
  const ComplexMatrix g = channels.bs_ris_matrix();
  require_same_size(w.size(), g.rows(), "comm_snr_general (w vs M)");
  require_same_size(h_ue.size(), g.cols(), "comm_snr_general (h_UE vs N)");
  require_same_size(v.size(), g.cols(), "comm_snr_general (v vs N)");
  const ComplexVector eff = g * v.vector().asDiagonal() * h_ue;
  return std::norm(eff.dot(w)) / sigma2;
}

double comm_snr_mrt(const RisPhase& v, const ComplexVector& h_ue, const ComplexVector& g2,
                    const SystemConstants& consts) {
  require_same_size(h_ue.size(), g2.size(), "comm_snr_mrt (h_UE vs g2)");
  require_same_size(v.size(), g2.size(), "comm_snr_mrt (v vs g2)");
  // h^H diag(v^H) g2 = sum_n conj(h_n) conj(v_n) g2_n
  const Complex s = (h_ue.array().conjugate() * v.vector().array().conjugate() * g2.array()).sum();
  return consts.snr_prefactor() * std::norm(s);
}

double beampattern_gain(const RisPhase& v, const ComplexVector& a_k, const ComplexVector& g2,
                        const SystemConstants& consts) {
  require_same_size(a_k.size(), g2.size(), "beampattern_gain (a_k vs g2)");
  require_same_size(v.size(), g2.size(), "beampattern_gain (v vs g2)");
  const Complex s = (a_k.array().conjugate() * v.vector().array().conjugate() * g2.array()).sum();
  return consts.gain_prefactor() * std::norm(s);
}

double beampattern_gain_general(const ComplexVector& w, const ChannelSet& channels,
                                const ComplexVector& a_k, const RisPhase& v) {
  const ComplexMatrix g = channels.bs_ris_matrix();
  require_same_size(w.size(), g.rows(), "beampattern_gain_general (w vs M)");
  require_same_size(a_k.size(), g.cols(), "beampattern_gain_general (a_k vs N)");
  require_same_size(v.size(), g.cols(), "beampattern_gain_general (v vs N)");
  const ComplexVector x = g * v.vector().asDiagonal() * a_k;
  // x^H w w^H x
  return std::norm(x.dot(w));
}

Metrics evaluate_metrics(const RisPhase& v, const ChannelSet& channels,
                         const SystemConstants& consts) {
  Metrics m;
  m.snr_linear = comm_snr_mrt(v, channels.h_ue, channels.g2, consts);
  m.snr_db = linear_to_db(m.snr_linear);
  m.gains.reserve(channels.a_targets.size());
  for (const auto& a : channels.a_targets) {
    const double g = beampattern_gain(v, a, channels.g2, consts);
    m.gains.push_back({g, linear_to_db(g)});
  }
  return m;
}

}  // namespace risisac
