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

#include "risisac/sdr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risisac/error.hpp"

namespace risisac {

namespace {

ComplexMatrix scaled_outer(const ComplexVector& u, double prefactor) {
  return prefactor * u * u.adjoint();
}

// Real inner product <X, Y> = Re tr(X^H Y).
double inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x.conjugate().cwiseProduct(y)).sum().real();
}

ComplexMatrix hermitian_part(const ComplexMatrix& h) { return 0.5 * (h + h.adjoint()); }

}  // namespace

ComplexMatrix build_psi_ue(const ComplexVector& h_ue, const ComplexVector& g2,
                           const SystemConstants& consts) {
  require_same_size(h_ue.size(), g2.size(), "build_psi_ue");
  const ComplexVector u = h_ue.conjugate().cwiseProduct(g2);
  return scaled_outer(u, consts.snr_prefactor());
}

ComplexMatrix build_psi_target(const ComplexVector& a_k, const ComplexVector& g2,
                               const SystemConstants& consts) {
  require_same_size(a_k.size(), g2.size(), "build_psi_target");
  const ComplexVector u = a_k.conjugate().cwiseProduct(g2);
  return scaled_outer(u, consts.gain_prefactor());
}

SdpProblem make_sdp_problem(const ChannelSet& channels, const SystemConstants& consts,
                            const RealVector& desired_gains) {
  require_same_size(desired_gains.size(), static_cast<long>(channels.a_targets.size()),
                    "make_sdp_problem (desired gains vs K)");
  SdpProblem p;
  p.psi_ue = build_psi_ue(channels.h_ue, channels.g2, consts);
  for (const auto& a : channels.a_targets) p.psi_targets.push_back(build_psi_target(a, channels.g2, consts));
  p.desired_gains = desired_gains;
  return p;
}

ComplexMatrix psd_project(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw ShapeError("psd_project: matrix must be square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(h));
  if (eig.info() != Eigen::Success) throw NumericalError("psd_project: eigendecomposition failed");
  const RealVector lam = eig.eigenvalues().cwiseMax(0.0);
  const ComplexMatrix& q = eig.eigenvectors();
  return q * lam.cast<Complex>().asDiagonal() * q.adjoint();
}

SdrSolution solve_sdp(const SdpProblem& problem, double tol, int max_iter) {
  SdpOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return solve_sdp(problem, opt);
}

SdrSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options) {
  const Eigen::Index n = problem.psi_ue.rows();
  if (problem.psi_ue.cols() != n || n == 0) throw ShapeError("solve_sdp: Psi_UE must be square and nonempty");
  require_same_size(problem.desired_gains.size(), static_cast<long>(problem.psi_targets.size()),
                    "solve_sdp (desired gains vs K)");
  if (options.max_iter < 1 || !(options.tol > 0.0) || !(options.rho > 0.0)) {
    throw ConfigError("solve_sdp: tol, rho and max_iter must be positive");
  }

  // Normalized data. Constraints with Psi_k == 0 are trivially satisfied or
  // trivially infeasible and are not passed to the splitting loop.
  const double c_norm = problem.psi_ue.norm();
  const ComplexMatrix cost = c_norm > 0.0 ? ComplexMatrix(-problem.psi_ue / c_norm)
                                          : ComplexMatrix(ComplexMatrix::Zero(n, n));
  std::vector<ComplexMatrix> rows;
  std::vector<double> rhs;
  for (std::size_t k = 0; k < problem.psi_targets.size(); ++k) {
    const auto& psi = problem.psi_targets[k];
    require_same_size(psi.rows(), n, "solve_sdp (Psi_k rows)");
    require_same_size(psi.cols(), n, "solve_sdp (Psi_k cols)");
    const double norm = psi.norm();
    const double d = problem.desired_gains(static_cast<Eigen::Index>(k));
    if (norm == 0.0) {
      if (d > 0.0) throw Infeasible("solve_sdp: zero gain matrix with a positive requirement");
      continue;
    }
    rows.push_back(hermitian_part(psi) / norm);
    rhs.push_back(d / norm);
  }
  const Eigen::Index k_count = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index m = n + k_count;

  // Gram matrix of the affine map (X, s) -> [diag X; <B_k, X> - s_k].
  RealMatrix gram = RealMatrix::Zero(m, m);
  gram.topLeftCorner(n, n).setIdentity();
  for (Eigen::Index k = 0; k < k_count; ++k) {
    const auto& bk = rows[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < n; ++i) {
      gram(i, n + k) = bk(i, i).real();
      gram(n + k, i) = bk(i, i).real();
    }
    for (Eigen::Index l = 0; l < k_count; ++l) {
      gram(n + k, n + l) = inner(bk, rows[static_cast<std::size_t>(l)]) + (k == l ? 1.0 : 0.0);
    }
  }
  const Eigen::LDLT<RealMatrix> gram_ldlt(gram);
  if (gram_ldlt.info() != Eigen::Success) throw NumericalError("solve_sdp: Gram factorization failed");
  RealVector target(m);
  target.head(n).setOnes();
  for (Eigen::Index k = 0; k < k_count; ++k) target(n + k) = rhs[static_cast<std::size_t>(k)];

  auto apply_map = [&](const ComplexMatrix& x, const RealVector& s) {
    RealVector out(m);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = x(i, i).real();
    for (Eigen::Index k = 0; k < k_count; ++k) out(n + k) = inner(rows[static_cast<std::size_t>(k)], x) - s(k);
    return out;
  };

  double rho = options.rho;
  ComplexMatrix z = ComplexMatrix::Identity(n, n);
  ComplexMatrix lam = ComplexMatrix::Zero(n, n);
  RealVector t = RealVector::Zero(k_count);
  RealVector mu = RealVector::Zero(k_count);
  ComplexMatrix x = z;
  RealVector s = t;

  SdrSolution sol;
  double primal = std::numeric_limits<double>::infinity();
  double dual = std::numeric_limits<double>::infinity();
  double primal_at_80 = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iter = 0;
  for (iter = 1; iter <= options.max_iter; ++iter) {
    // Affine step: projection of (W - C/rho, w) onto the constraint set.
    const ComplexMatrix w_mat = z - lam - cost / rho;
    const RealVector w_vec = t - mu;
    const RealVector y = gram_ldlt.solve(apply_map(w_mat, w_vec) - target);
    x = w_mat;
    for (Eigen::Index i = 0; i < n; ++i) x(i, i) -= y(i);
    for (Eigen::Index k = 0; k < k_count; ++k) x -= y(n + k) * rows[static_cast<std::size_t>(k)];
    s = w_vec + y.tail(k_count);

    // Cone step.
    const ComplexMatrix z_old = z;
    const RealVector t_old = t;
    z = psd_project(x + lam);
    t = (s + mu).cwiseMax(0.0);

    lam += x - z;
    mu += s - t;

    primal = std::sqrt((x - z).squaredNorm() + (s - t).squaredNorm());
    dual = rho * std::sqrt((z - z_old).squaredNorm() + (t - t_old).squaredNorm());
    if (iter == (options.max_iter * 4) / 5) primal_at_80 = primal;
    if (primal <= options.tol && dual <= options.tol) {
      converged = true;
      break;
    }
    if (options.balance_every > 0 && iter % options.balance_every == 0) {
      if (primal > options.balance_ratio * dual) {
        rho *= 2.0;
        lam /= 2.0;
        mu /= 2.0;
      } else if (dual > options.balance_ratio * primal) {
        rho /= 2.0;
        lam *= 2.0;
        mu *= 2.0;
      }
    }
  }

  if (!converged) {
    const bool slack_pinned = k_count > 0 && t.minCoeff() <= options.tol;
    const bool stagnated = options.max_iter >= kMinStagnationWindow && primal > 0.5 * primal_at_80;
    if (slack_pinned && stagnated && primal > options.tol) {
      throw Infeasible("solve_sdp: residuals stagnate with the gain slacks pinned at zero");
    }
    throw NonConvergence(options.max_iter, primal, dual);
  }

  sol.diag_residual = (z.diagonal().array() - Complex{1.0, 0.0}).abs().maxCoeff();
  // Rescale to an exactly unit diagonal; congruence keeps V PSD.
  const RealVector d_inv_sqrt = z.diagonal().real().cwiseMax(std::numeric_limits<double>::min()).cwiseSqrt().cwiseInverse();
  sol.V = d_inv_sqrt.cast<Complex>().asDiagonal() * z * d_inv_sqrt.cast<Complex>().asDiagonal();
  sol.V = hermitian_part(sol.V);
  sol.iterations = iter;
  sol.primal_residual = primal;
  sol.dual_residual = dual;
  sol.relaxed_objective = inner(problem.psi_ue, sol.V);
  sol.constraint_residuals = RealVector::Zero(static_cast<Eigen::Index>(problem.psi_targets.size()));
  for (std::size_t k = 0; k < problem.psi_targets.size(); ++k) {
    const double d = problem.desired_gains(static_cast<Eigen::Index>(k));
    const double achieved = inner(problem.psi_targets[k], sol.V);
    sol.constraint_residuals(static_cast<Eigen::Index>(k)) =
        d > 0.0 ? std::max(0.0, d - achieved) / d : 0.0;
  }
  return sol;
}

Metrics trace_metrics(const RisPhase& v, const SdpProblem& problem) {
  const ComplexVector& x = v.vector();
  require_same_size(x.size(), problem.psi_ue.rows(), "trace_metrics");
  Metrics m;
  m.snr_linear = std::max(0.0, x.dot(problem.psi_ue * x).real());
  m.snr_db = linear_to_db(m.snr_linear);
  for (const auto& psi : problem.psi_targets) {
    const double g = std::max(0.0, x.dot(psi * x).real());
    m.gains.push_back({g, linear_to_db(g)});
  }
  return m;
}

RandomizationResult gaussian_randomization(const ComplexMatrix& V, const SdpProblem& problem,
                                           int trials, const Rng& rng) {
  if (trials < 1) throw ConfigError("gaussian_randomization: trials must be at least 1");
  require_same_size(V.rows(), problem.psi_ue.rows(), "gaussian_randomization");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(V));
  if (eig.info() != Eigen::Success) {
    throw NumericalError("gaussian_randomization: eigendecomposition failed");
  }
  // Eigenvalues at rounding level are treated as zero.
  const double floor = kRankTolerance * std::max(0.0, eig.eigenvalues().maxCoeff());
  const RealVector ev = eig.eigenvalues().unaryExpr([floor](double e) { return e > floor ? e : 0.0; });
  const ComplexMatrix factor = eig.eigenvectors() * ev.cwiseSqrt().cast<Complex>().asDiagonal();

  const auto k_count = problem.psi_targets.size();
  auto min_ratio = [&](const Metrics& m) {
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < k_count; ++k) {
      const double d = problem.desired_gains(static_cast<Eigen::Index>(k));
      if (d > 0.0) r = std::min(r, m.gains[k].linear / d);
    }
    return r;
  };

  RandomizationResult best;
  best.candidate_snr.reserve(static_cast<std::size_t>(trials));
  best.candidate_min_ratio.reserve(static_cast<std::size_t>(trials));
  bool have_feasible = false;
  bool have_any = false;
  double best_fallback = -1.0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng stream = rng.child(static_cast<std::uint64_t>(trial));
    const ComplexVector xi = factor * stream.complex_normal_vector(V.rows());
    RisPhase cand = RisPhase::from_complex(xi);
    Metrics m = trace_metrics(cand, problem);
    const double ratio = min_ratio(m);
    best.candidate_snr.push_back(m.snr_linear);
    best.candidate_min_ratio.push_back(ratio);
    const bool feasible = ratio >= 1.0 - kRandomizationSlack;
    if (feasible) {
      ++best.feasible_candidates;
      if (!have_feasible || m.snr_linear > best.metrics.snr_linear) {
        best.v = std::move(cand);
        best.metrics = std::move(m);
        best.min_ratio = ratio;
        have_feasible = true;
      }
    } else if (!have_feasible && (!have_any || ratio > best_fallback)) {
      best_fallback = ratio;
      best.v = std::move(cand);
      best.metrics = std::move(m);
      best.min_ratio = ratio;
    }
    have_any = true;
  }
  best.feasible = have_feasible;
  return best;
}

}  // namespace risisac
