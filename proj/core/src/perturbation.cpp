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

#include "risisac/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risisac/error.hpp"
#include "risisac/rng.hpp"

namespace risisac {

namespace {

double safe_arg(const Complex& z) { return z == Complex{} ? 0.0 : std::arg(z); }

// exp(j (arg h_n - arg a_n))
ComplexVector relative_phase_terms(const ComplexVector& h_ue, const ComplexVector& a_k) {
  ComplexVector t(h_ue.size());
  for (Eigen::Index n = 0; n < h_ue.size(); ++n) {
    t(n) = std::polar(1.0, safe_arg(h_ue(n)) - safe_arg(a_k(n)));
  }
  return t;
}

ComplexVector perturbation_factor(const RealVector& delta_phi) {
  ComplexVector e(delta_phi.size());
  for (Eigen::Index n = 0; n < delta_phi.size(); ++n) e(n) = std::polar(1.0, -delta_phi(n));
  return e;
}

bool all_finite(const RealMatrix& m) { return m.allFinite(); }

}  // namespace

RisPhase comm_optimal_phase(const ComplexVector& h_ue, const ComplexVector& g2) {
  require_same_size(h_ue.size(), g2.size(), "comm_optimal_phase");
  RealVector phi(h_ue.size());
  for (Eigen::Index n = 0; n < h_ue.size(); ++n) phi(n) = safe_arg(std::conj(h_ue(n)) * g2(n));
  return RisPhase(phi);
}

Complex eta_exact(const RealVector& delta_phi, const ComplexVector& h_ue, const ComplexVector& a_k) {
  require_same_size(h_ue.size(), a_k.size(), "eta_exact (h_UE vs a_k)");
  require_same_size(delta_phi.size(), a_k.size(), "eta_exact (dphi vs a_k)");
  return relative_phase_terms(h_ue, a_k).cwiseProduct(perturbation_factor(delta_phi)).sum();
}

Complex eta_linearized(const RealVector& delta_phi, const ComplexVector& h_ue,
                       const ComplexVector& a_k) {
  require_same_size(h_ue.size(), a_k.size(), "eta_linearized (h_UE vs a_k)");
  require_same_size(delta_phi.size(), a_k.size(), "eta_linearized (dphi vs a_k)");
  const ComplexVector t = relative_phase_terms(h_ue, a_k);
  const Complex j{0.0, 1.0};
  return t.sum() - j * (t.array() * delta_phi.array().cast<Complex>()).sum();
}

RealVector eta_targets(double alpha, const std::vector<double>& weights, int n_elements) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]", "alpha");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ConfigError("weights must be nonnegative", "targets");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ConfigError("weights must sum to 1", "targets");
  RealVector out(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t k = 0; k < weights.size(); ++k) {
    out(static_cast<Eigen::Index>(k)) = alpha * weights[k] * n_elements;
  }
  return out;
}

ComplexVector PerturbationSystem::eta(const RealVector& delta_phi) const {
  require_same_size(delta_phi.size(), elements(), "PerturbationSystem::eta");
  return base_terms * perturbation_factor(delta_phi);
}

ComplexVector PerturbationSystem::eta_linear(const RealVector& delta_phi) const {
  require_same_size(delta_phi.size(), elements(), "PerturbationSystem::eta_linear");
  const Complex j{0.0, 1.0};
  const ComplexVector c = base_terms.rowwise().sum();
  return c - j * (base_terms * delta_phi.cast<Complex>());
}

double PerturbationSystem::exact_objective(const RealVector& delta_phi) const {
  return scale * scale * (eta(delta_phi) - eta_bar.cast<Complex>()).squaredNorm();
}

double PerturbationSystem::linearized_objective(const RealVector& delta_phi) const {
  return scale * scale * (eta_linear(delta_phi) - eta_bar.cast<Complex>()).squaredNorm();
}

double PerturbationSystem::stacked_objective(const RealVector& delta_phi) const {
  require_same_size(delta_phi.size(), elements(), "PerturbationSystem::stacked_objective");
  return (A_stacked * delta_phi - b_stacked).squaredNorm();
}

PerturbationSystem build_system(const ComplexVector& h_ue, const std::vector<ComplexVector>& targets,
                                const RealVector& eta_bar, const SystemConstants& consts) {
  if (targets.empty()) throw ConfigError("build_system: at least one target is required", "targets");
  const Eigen::Index k_count = static_cast<Eigen::Index>(targets.size());
  const Eigen::Index n = h_ue.size();
  require_same_size(eta_bar.size(), k_count, "build_system (eta_bar vs K)");

  PerturbationSystem sys;
  sys.scale = std::sqrt(consts.gain_prefactor());
  sys.eta_bar = eta_bar;
  sys.base_terms.resize(k_count, n);
  for (Eigen::Index k = 0; k < k_count; ++k) {
    require_same_size(targets[static_cast<std::size_t>(k)].size(), n, "build_system (a_k vs N)");
    sys.base_terms.row(k) = relative_phase_terms(h_ue, targets[static_cast<std::size_t>(k)]).transpose();
  }
  if (k_count > n) {
    sys.warnings.push_back("ill-posed: more targets (" + std::to_string(k_count) +
                           ") than RIS elements (" + std::to_string(n) + ")");
  }

  const Complex j{0.0, 1.0};
  sys.A = j * sys.base_terms;
  sys.b = sys.base_terms.rowwise().sum() - eta_bar.cast<Complex>();

  sys.A_stacked.resize(2 * k_count, n);
  sys.A_stacked.topRows(k_count) = sys.scale * sys.A.real();
  sys.A_stacked.bottomRows(k_count) = sys.scale * sys.A.imag();
  sys.b_stacked.resize(2 * k_count);
  sys.b_stacked.head(k_count) = sys.scale * sys.b.real();
  sys.b_stacked.tail(k_count) = sys.scale * sys.b.imag();

  if (!all_finite(sys.A_stacked) || !sys.b_stacked.allFinite()) {
    throw NumericalError("build_system: non-finite entries in the stacked system");
  }

  Eigen::JacobiSVD<RealMatrix> svd(sys.A_stacked, Eigen::ComputeFullU | Eigen::ComputeFullV);
  sys.U = svd.matrixU();
  sys.V = svd.matrixV();
  sys.singular_values = svd.singularValues();
  if (!all_finite(sys.U) || !all_finite(sys.V) || !sys.singular_values.allFinite()) {
    throw NumericalError("build_system: SVD produced non-finite factors");
  }

  // Stacked-real and complex-modulus objectives must agree.
  Rng check_rng(0x5EEDULL);
  for (int trial = 0; trial < 10; ++trial) {
    const RealVector d = check_rng.uniform_vector(n, -0.5, 0.5);
    const double stacked = sys.stacked_objective(d);
    const double complex_form = sys.linearized_objective(d);
    const double ref = std::max({std::abs(stacked), std::abs(complex_form),
                                 std::numeric_limits<double>::min()});
    if (std::abs(stacked - complex_form) > 1e-8 * ref) {
      throw NumericalError("build_system: stacked objective disagrees with the complex form");
    }
  }
  return sys;
}

double lambda_schedule(double alpha, double sigma_max) { return (1.0 - alpha * alpha) * sigma_max; }

double select_lambda(const LambdaPolicy& policy, double alpha, double sigma_max) {
  if (policy.kind == LambdaPolicy::Kind::adaptive) return lambda_schedule(alpha, sigma_max);
  return policy.fraction * sigma_max;
}

SolveReport solve_perturbation(const PerturbationSystem& system, double lambda) {
  if (!(lambda >= 0.0)) throw ConfigError("solve_perturbation: lambda must be nonnegative");
  const RealVector& s = system.singular_values;
  const Eigen::Index r = s.size();
  const double cutoff = kPseudoInverseRcond * system.sigma_max();

  // Filtered coefficients sigma_i / (sigma_i^2 + lambda) * (u_i^T b).
  const RealVector ub = system.U.leftCols(r).transpose() * system.b_stacked;
  RealVector coeff(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const bool dropped = lambda == 0.0 && !(s(i) > cutoff);
    coeff(i) = dropped ? 0.0 : s(i) / (s(i) * s(i) + lambda) * ub(i);
  }

  SolveReport rep;
  rep.delta_phi = system.V.leftCols(r) * coeff;
  if (!rep.delta_phi.allFinite()) throw NumericalError("solve_perturbation: non-finite solution");
  rep.lambda_used = lambda;
  rep.objective_value = system.exact_objective(rep.delta_phi);
  rep.residual_norm = (system.A_stacked * rep.delta_phi - system.b_stacked).norm();
  rep.max_abs_perturbation = rep.delta_phi.size() ? rep.delta_phi.cwiseAbs().maxCoeff() : 0.0;
  rep.linearization_error_bound = 0.5 * rep.delta_phi.squaredNorm();
  rep.max_linearization_gap =
      (system.eta(rep.delta_phi) - system.eta_linear(rep.delta_phi)).cwiseAbs().maxCoeff();
  return rep;
}

RisPhase compose_phase(const RisPhase& v_star, const RealVector& delta_phi) {
  require_same_size(delta_phi.size(), v_star.size(), "compose_phase");
  return RisPhase(v_star.phases() + delta_phi);
}

double gain_upper_bound(double alpha, double zeta_k, const SystemConstants& consts, int n_elements) {
  const double eta = alpha * zeta_k * n_elements;
  return consts.gain_prefactor() * eta * eta;
}

ProposedDesign design_proposed(const ChannelSet& channels, const SystemConstants& consts,
                               double alpha, const std::vector<double>& weights,
                               const LambdaPolicy& policy) {
  const int n = static_cast<int>(channels.g2.size());
  ProposedDesign d;
  d.v_star = comm_optimal_phase(channels.h_ue, channels.g2);
  d.system = build_system(channels.h_ue, channels.a_targets, eta_targets(alpha, weights, n), consts);
  const double lambda = select_lambda(policy, alpha, d.system.sigma_max());
  d.report = solve_perturbation(d.system, lambda);
  d.v = compose_phase(d.v_star, d.report.delta_phi);
  d.metrics = evaluate_metrics(d.v, channels, consts);
  for (double w : weights) d.upper_bounds.push_back(gain_upper_bound(alpha, w, consts, n));
  return d;
}

}  // namespace risisac
