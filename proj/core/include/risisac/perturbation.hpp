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

#include <string>
#include <vector>

#include "risisac/beamforming.hpp"
#include "risisac/linalg.hpp"
#include "risisac/ris_phase.hpp"
#include "risisac/scenario.hpp"

namespace risisac {

/// Closed-form RIS design: the communication-optimal phases v* are perturbed
/// by a small real vector dphi, v = v* o exp(j dphi), chosen so the beam sums
/// toward the targets approach alpha * zeta_k * N.
///
/// The beam sum toward target k is
///   eta_k(dphi) = sum_n exp(j (arg h_n - arg a_k,n)) exp(-j dphi_n),
/// which makes P_k(v* o exp(j dphi)) = P beta_G M |eta_k(dphi)|^2 exactly.

/// v*(n) = exp(j arg(conj(h_n) g2_n)); an exactly-zero product gets phase 0.
RisPhase comm_optimal_phase(const ComplexVector& h_ue, const ComplexVector& g2);

/// Exact beam sum eta_k(dphi). |eta_k| <= N.
Complex eta_exact(const RealVector& delta_phi, const ComplexVector& h_ue, const ComplexVector& a_k);

/// First-order expansion c_k - j sum_n exp(j (arg h_n - arg a_k,n)) dphi_n,
/// with c_k = eta_k(0). Within ||dphi||^2 / 2 of eta_exact.
Complex eta_linearized(const RealVector& delta_phi, const ComplexVector& h_ue,
                       const ComplexVector& a_k);

/// eta_bar_k = alpha zeta_k N. Throws ConfigError if the weights are negative,
/// do not sum to one within 1e-12, or alpha is outside [0, 1].
RealVector eta_targets(double alpha, const std::vector<double>& weights, int n_elements);

/// Linearized least-squares system. With A(k,n) = j exp(j (arg h_n - arg a_k,n))
/// and b(k) = c_k - eta_bar_k, eta_lin_k - eta_bar_k = -(A dphi - b)_k, so
///   f(dphi) = sum_k P M beta_G |eta_k - eta_bar_k|^2 ~= ||A_stacked dphi - b_stacked||^2
/// with A_stacked = sqrt(P M beta_G) [Re A; Im A] (likewise b_stacked).
struct PerturbationSystem {
  ComplexMatrix A;           ///< K x N, unit-modulus entries
  ComplexVector b;           ///< K
  RealMatrix A_stacked;      ///< 2K x N
  RealVector b_stacked;      ///< 2K
  double scale = 0.0;        ///< sqrt(P M beta_G)
  RealMatrix U;              ///< 2K x 2K
  RealVector singular_values;  ///< descending, length min(2K, N)
  RealMatrix V;              ///< N x N
  RealVector eta_bar;        ///< K
  ComplexMatrix base_terms;  ///< K x N, exp(j (arg h_n - arg a_k,n))
  std::vector<std::string> warnings;

  Eigen::Index targets() const { return A.rows(); }
  Eigen::Index elements() const { return A.cols(); }
  double sigma_max() const { return singular_values.size() ? singular_values(0) : 0.0; }

  /// eta_k(dphi) for every target.
  ComplexVector eta(const RealVector& delta_phi) const;
  ComplexVector eta_linear(const RealVector& delta_phi) const;
  /// f(dphi) = sum_k P M beta_G |eta_k(dphi) - eta_bar_k|^2 with the exact beam sums.
  double exact_objective(const RealVector& delta_phi) const;
  /// Same sum with the linearized beam sums.
  double linearized_objective(const RealVector& delta_phi) const;
  /// ||A_stacked dphi - b_stacked||^2.
  double stacked_objective(const RealVector& delta_phi) const;
};

/// Builds A, b, the stacked real system and its full SVD, then spot-checks the
/// stacked objective against the complex one on 10 random dphi (1e-8
/// relative); a mismatch or SVD failure throws NumericalError. K > N is
/// allowed and recorded in `warnings`.
PerturbationSystem build_system(const ComplexVector& h_ue, const std::vector<ComplexVector>& targets,
                                const RealVector& eta_bar, const SystemConstants& consts);

/// lambda = (1 - alpha^2) sigma_max.
double lambda_schedule(double alpha, double sigma_max);
double select_lambda(const LambdaPolicy& policy, double alpha, double sigma_max);

struct SolveReport {
  RealVector delta_phi;
  double objective_value = 0.0;  ///< exact f(dphi*)
  double residual_norm = 0.0;    ///< ||A_stacked dphi* - b_stacked||
  double lambda_used = 0.0;
  double max_abs_perturbation = 0.0;
  double linearization_error_bound = 0.0;  ///< ||dphi*||^2 / 2, in eta units
  double max_linearization_gap = 0.0;      ///< max_k |eta_k - eta_lin_k|, measured
};

inline constexpr double kPseudoInverseRcond = 1e-12;

/// dphi* = V (S^2 + lambda I)^-1 S U^T b_stacked. For lambda == 0 singular
/// values below 1e-12 sigma_max are dropped (minimum-norm least squares).
SolveReport solve_perturbation(const PerturbationSystem& system, double lambda);

/// phi(n) = wrap(phi*(n) + dphi(n)).
RisPhase compose_phase(const RisPhase& v_star, const RealVector& delta_phi);

/// P beta_G M (alpha zeta_k N)^2.
double gain_upper_bound(double alpha, double zeta_k, const SystemConstants& consts, int n_elements);

/// End-to-end proposed design for one channel realization.
struct ProposedDesign {
  RisPhase v_star;
  PerturbationSystem system;
  SolveReport report;
  RisPhase v;
  Metrics metrics;
  std::vector<double> upper_bounds;  ///< P_k^UB, linear
};

ProposedDesign design_proposed(const ChannelSet& channels, const SystemConstants& consts,
                               double alpha, const std::vector<double>& weights,
                               const LambdaPolicy& policy);

}  // namespace risisac
