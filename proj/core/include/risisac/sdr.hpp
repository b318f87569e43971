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

#include <optional>
#include <vector>

#include "risisac/beamforming.hpp"
#include "risisac/geometry.hpp"
#include "risisac/linalg.hpp"
#include "risisac/ris_phase.hpp"
#include "risisac/rng.hpp"

namespace risisac {

/// Relaxed benchmark program
///   max tr(V Psi_UE)  s.t.  tr(V Psi_k) >= desired_k,  V(n,n) = 1,  V >= 0.
struct SdpProblem {
  ComplexMatrix psi_ue;
  std::vector<ComplexMatrix> psi_targets;
  RealVector desired_gains;  ///< linear, same unit as P_k
};

/// (P/sigma2) beta_G M u u^H with u = diag(h^H) g2.
ComplexMatrix build_psi_ue(const ComplexVector& h_ue, const ComplexVector& g2,
                           const SystemConstants& consts);
/// P beta_G M u u^H with u = diag(a_k^H) g2.
ComplexMatrix build_psi_target(const ComplexVector& a_k, const ComplexVector& g2,
                               const SystemConstants& consts);

SdpProblem make_sdp_problem(const ChannelSet& channels, const SystemConstants& consts,
                            const RealVector& desired_gains);

/// Eigenvalue clamp at zero of the Hermitian part of `h`.
ComplexMatrix psd_project(const ComplexMatrix& h);

struct SdpOptions {
  double tol = 1e-5;
  int max_iter = 5000;
  double rho = 1.0;
  /// Residual balancing: rho is doubled/halved when one residual exceeds the
  /// other by this factor.
  double balance_ratio = 10.0;
  int balance_every = 10;
};

struct RandomizationResult {
  RisPhase v;
  Metrics metrics;
  bool feasible = false;  ///< every P_k >= (1 - slack) desired_k
  int feasible_candidates = 0;
  double min_ratio = 0.0;  ///< min_k P_k / desired_k of the returned candidate
  std::vector<double> candidate_snr;        ///< gamma (linear) of every trial, in trial order
  std::vector<double> candidate_min_ratio;  ///< min_k P_k / desired_k of every trial
};

/// Infeasibility is only diagnosed with at least this many iterations.
inline constexpr int kMinStagnationWindow = 100;

struct SdrSolution {
  ComplexMatrix V;  ///< rescaled to an exactly unit diagonal
  double relaxed_objective = 0.0;
  RealVector constraint_residuals;  ///< max(0, desired_k - tr(V Psi_k)) / desired_k
  double diag_residual = 0.0;       ///< max_n |Z(n,n) - 1| of the cone iterate before rescaling
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::optional<RisPhase> extracted_v;
  std::optional<Metrics> extracted_metrics;
};

/// Splitting solver for SdpProblem. The affine copy (X, s) carries the unit
/// diagonal and tr(X Psi_k) - s_k = desired_k; the cone copy (Z, t) lives in
/// PSD x R_+^K. Data are normalized internally; reported values are in the
/// original units. Throws NonConvergence or Infeasible.
SdrSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});
SdrSolution solve_sdp(const SdpProblem& problem, double tol, int max_iter);

inline constexpr double kRandomizationSlack = 0.05;
/// Eigenvalues of V below this fraction of the largest are dropped when
/// factoring the sampling covariance.
inline constexpr double kRankTolerance = 1e-12;

/// Draws `trials` candidates xi ~ CN(0, V), projects each to exp(j arg xi) and
/// keeps the feasible candidate (5% slack on every gain constraint) with the
/// largest SNR; without a feasible candidate, the one maximizing
/// min_k P_k / desired_k. Trial t uses the stream rng.child(t).
RandomizationResult gaussian_randomization(const ComplexMatrix& V, const SdpProblem& problem,
                                           int trials, const Rng& rng);

/// gamma = v^H Psi_UE v and P_k = v^H Psi_k v.
Metrics trace_metrics(const RisPhase& v, const SdpProblem& problem);

}  // namespace risisac
