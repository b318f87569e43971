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
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "risisac/geometry.hpp"
#include "risisac/perturbation.hpp"
#include "risisac/scenario.hpp"
#include "risisac/sdr.hpp"

namespace risisac {

enum class Method { comm_only, proposed, sdr };

std::string to_string(Method m);
/// Accepts "comm-only", "proposed", "sdr". Throws ConfigError.
Method parse_method(const std::string& text);

inline constexpr int kDefaultSdrCap = 64;
inline constexpr int kDefaultMonteCarloSeeds = 20;
inline constexpr int kDefaultRandomizationTrials = 100;

struct ExperimentOptions {
  /// Channel-realization seeds; see monte_carlo_seeds().
  std::vector<std::uint64_t> seeds;
  int sdr_cap = kDefaultSdrCap;
  bool include_sdr = true;
  int sdr_trials = kDefaultRandomizationTrials;
  SdpOptions sdp;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

/// Realization seeds child_seed(base, 0..count-1).
std::vector<std::uint64_t> monte_carlo_seeds(std::uint64_t base, int count);

/// Seed of the single realization used by one-shot runs (solve, heatmap).
inline std::uint64_t primary_realization_seed(std::uint64_t base) { return child_seed(base, 0); }

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to per-index slots; the first exception (by index) is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

/// A designed RIS configuration plus what produced it.
struct MethodDesign {
  Method method = Method::proposed;
  RisPhase v;
  Metrics metrics;
  std::optional<ProposedDesign> proposed;
  std::optional<SdrSolution> sdr;
};

/// Designs the RIS for one realization. SDR uses the gain upper bounds of the
/// proposed method as desired gains and throws CapExceeded above sdr_cap.
MethodDesign design_method(Method method, const ScenarioConfig& cfg, const ChannelSet& channels,
                           const SystemConstants& consts, const ExperimentOptions& options,
                           std::uint64_t realization_seed);

// --- spatial heatmap ---------------------------------------------------

struct GridSpec {
  double x_min = 0.0;
  double x_max = 120.0;
  double y_min = -40.0;
  double y_max = 40.0;
  double resolution_x = 1.0;  ///< meters per cell
  double resolution_y = 1.0;

  int nx() const;
  int ny() const;
};

struct HeatmapGrid {
  GridSpec spec;
  std::vector<double> xs;  ///< cell centres
  std::vector<double> ys;
  RealMatrix gain_db;      ///< ny x nx
  Method method = Method::proposed;
  Position ris;
  Position ue;
  std::vector<double> target_angles_deg;
  Metrics metrics;
};

/// Far-field beampattern gain (dB) toward every grid cell, as seen from the RIS.
HeatmapGrid run_heatmap(const ScenarioConfig& cfg, const GridSpec& grid, Method method,
                        const ExperimentOptions& options);

/// Beampattern gain (linear) of configuration v toward angle theta.
double gain_toward(const RisPhase& v, const ScenarioConfig& cfg, const ChannelSet& channels,
                   const SystemConstants& consts, double theta);

// --- sweeps --------------------------------------------------------------

struct SweepRow {
  double axis = 0.0;
  std::string method;  ///< lambda policy, "proposed", "sdr-ub" or "sdr-rand"
  std::uint64_t seed = 0;
  double gamma_db = 0.0;
  std::vector<double> gains_db;
};

struct SweepResult {
  std::string axis_name;
  std::vector<double> axis;
  std::vector<std::string> methods;
  std::vector<std::uint64_t> seeds;
  std::vector<SweepRow> rows;  ///< ordered by (axis, seed, method)
  std::vector<std::string> notes;

  struct Mean {
    double gamma_db = 0.0;
    std::vector<double> gains_db;
    int samples = 0;
  };
  /// Seed-mean of the dB values at one axis point; nullopt without rows.
  std::optional<Mean> mean(double axis_value, const std::string& method) const;
};

inline const std::string kSdrUpperBound = "sdr-ub";
inline const std::string kSdrRandomized = "sdr-rand";

/// Proposed method for every (alpha, lambda policy, seed); SDR rows when the
/// RIS has at most sdr_cap elements.
SweepResult sweep_alpha(const ScenarioConfig& cfg, const std::vector<double>& alphas,
                        const std::vector<LambdaPolicy>& policies, const ExperimentOptions& options);

/// Two-target weight sweep: zeta_1 = r/(1+r), zeta_2 = 1/(1+r) at fixed alpha,
/// with the scenario's lambda policy.
SweepResult sweep_weight_ratio(const ScenarioConfig& cfg, const std::vector<double>& ratios,
                               double alpha, const ExperimentOptions& options);

// --- beampattern versus angle ---------------------------------------------

struct AoaScan {
  std::vector<double> band_angles_deg;  ///< virtual targets
  std::vector<double> scan_deg;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> gain_db;  ///< [method][scan point], seed-mean
  std::vector<double> ue_gain_db;            ///< [method], seed-mean gain at the UE angle
  double ue_angle_deg = 0.0;
  std::vector<std::string> notes;
};

/// Expands [band_lo, band_hi] into equal-weight virtual targets every
/// band_resolution degrees (the resolution must divide the band), designs the
/// RIS with the proposed method (and SDR when allowed) and scans the gain.
AoaScan beampattern_vs_aoa(const ScenarioConfig& cfg, double band_lo_deg, double band_hi_deg,
                           double band_resolution_deg, const std::vector<double>& scan_deg,
                           const ExperimentOptions& options);

/// lo, lo + step, ..., up to hi inclusive (within 1e-9 step).
std::vector<double> angle_grid(double lo, double hi, double step);

// --- complexity probe -----------------------------------------------------

struct ComplexityRow {
  int n_elements = 0;
  std::string method;
  double median_seconds = 0.0;
};

/// Median wall time of the proposed design (and SDR when n <= sdr_cap) per N.
std::vector<ComplexityRow> run_complexity_probe(const ScenarioConfig& base,
                                                const std::vector<int>& n_list, int k_targets,
                                                int repeats, const ExperimentOptions& options);

/// Least-squares slope of log(time) against log(N) for one method.
double loglog_slope(const std::vector<ComplexityRow>& rows, const std::string& method);

/// Near-square N_V x N_H factorization with N_V <= N_H.
std::pair<int, int> planar_shape(int n_elements);

// --- CSV -------------------------------------------------------------------

void write_alpha_sweep_csv(std::ostream& out, const SweepResult& r);
/// Proposed rows only; columns ratio, seed, gamma_db, gain_t1_db, gain_t2_db.
void write_weight_sweep_csv(std::ostream& out, const SweepResult& r);
/// SDR rows of a weight sweep, with a method column.
void write_weight_sweep_sdr_csv(std::ostream& out, const SweepResult& r);
void write_aoa_scan_csv(std::ostream& out, const AoaScan& scan);
void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid);
void write_complexity_csv(std::ostream& out, const std::vector<ComplexityRow>& rows);

}  // namespace risisac
