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

#include "risisac/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "risisac/csv.hpp"
#include "risisac/error.hpp"

namespace risisac {

std::string to_string(Method m) {
  switch (m) {
    case Method::comm_only:
      return "comm-only";
    case Method::proposed:
      return "proposed";
    case Method::sdr:
      return "sdr";
  }
  return "unknown";
}

Method parse_method(const std::string& text) {
  if (text == "comm-only") return Method::comm_only;
  if (text == "proposed") return Method::proposed;
  if (text == "sdr") return Method::sdr;
  throw ConfigError("method: expected proposed, sdr or comm-only, got '" + text + "'", "method");
}

std::vector<std::uint64_t> monte_carlo_seeds(std::uint64_t base, int count) {
  if (count < 1) throw ConfigError("the number of seeds must be at least 1", "seeds");
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(child_seed(base, static_cast<std::uint64_t>(i)));
  return out;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::exception_ptr> errors(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

ScenarioConfig with_weights(ScenarioConfig cfg, const std::vector<double>& weights) {
  for (std::size_t k = 0; k < cfg.targets.size(); ++k) cfg.targets[k].weight = weights.at(k);
  return cfg;
}

RealVector upper_bounds(const ScenarioConfig& cfg, const SystemConstants& consts) {
  RealVector ub(cfg.target_count());
  for (int k = 0; k < cfg.target_count(); ++k) {
    ub(k) = gain_upper_bound(cfg.alpha, cfg.targets[static_cast<std::size_t>(k)].weight, consts,
                             cfg.ris_elements());
  }
  return ub;
}

std::vector<double> gains_db(const Metrics& m) {
  std::vector<double> out;
  out.reserve(m.gains.size());
  for (const auto& g : m.gains) out.push_back(g.db);
  return out;
}

bool sdr_allowed(const ScenarioConfig& cfg, const ExperimentOptions& options) {
  return options.include_sdr && cfg.ris_elements() <= options.sdr_cap;
}

std::string sdr_skip_note(const ScenarioConfig& cfg, const ExperimentOptions& options) {
  if (!options.include_sdr) return "SDR disabled";
  return "SDR omitted: N = " + std::to_string(cfg.ris_elements()) + " exceeds sdr_cap = " +
         std::to_string(options.sdr_cap);
}

}  // namespace

MethodDesign design_method(Method method, const ScenarioConfig& cfg, const ChannelSet& channels,
                           const SystemConstants& consts, const ExperimentOptions& options,
                           std::uint64_t realization_seed) {
  MethodDesign d;
  d.method = method;
  switch (method) {
    case Method::comm_only:
      d.v = comm_optimal_phase(channels.h_ue, channels.g2);
      break;
    case Method::proposed:
      d.proposed = design_proposed(channels, consts, cfg.alpha, cfg.weights(), cfg.lambda_policy);
      d.v = d.proposed->v;
      break;
    case Method::sdr: {
      if (cfg.ris_elements() > options.sdr_cap) {
        throw CapExceeded("SDR requested for N = " + std::to_string(cfg.ris_elements()) +
                          " elements, above sdr_cap = " + std::to_string(options.sdr_cap) +
                          "; the relaxed program grows as N^2 variables with O(N^3) work per iteration");
      }
      const SdpProblem problem = make_sdp_problem(channels, consts, upper_bounds(cfg, consts));
      SdrSolution sol = solve_sdp(problem, options.sdp);
      const RandomizationResult pick =
          gaussian_randomization(sol.V, problem, options.sdr_trials, Rng(realization_seed).child(1));
      sol.extracted_v = pick.v;
      sol.extracted_metrics = pick.metrics;
      d.v = pick.v;
      d.sdr = std::move(sol);
      break;
    }
  }
  d.metrics = evaluate_metrics(d.v, channels, consts);
  return d;
}

double gain_toward(const RisPhase& v, const ScenarioConfig& cfg, const ChannelSet& channels,
                   const SystemConstants& consts, double theta) {
  const ArrayGeometry geom = ArrayGeometry::from_scenario(cfg);
  return beampattern_gain(v, ris_steering_rx(geom, theta), channels.g2, consts);
}

// --- heatmap ---------------------------------------------------------------

int GridSpec::nx() const { return static_cast<int>(std::lround((x_max - x_min) / resolution_x)); }
int GridSpec::ny() const { return static_cast<int>(std::lround((y_max - y_min) / resolution_y)); }

HeatmapGrid run_heatmap(const ScenarioConfig& cfg, const GridSpec& grid, Method method,
                        const ExperimentOptions& options) {
  validate(cfg);
  if (!(grid.resolution_x > 0.0) || !(grid.resolution_y > 0.0) || grid.nx() < 1 || grid.ny() < 1) {
    throw ConfigError("heatmap grid needs positive resolution and a nonempty range", "grid");
  }
  const std::uint64_t seed = primary_realization_seed(cfg.seed);
  Rng rng(seed);
  const ChannelSet channels = build_channels(cfg, rng);
  const SystemConstants consts = make_constants(cfg, channels);
  const MethodDesign design = design_method(method, cfg, channels, consts, options, seed);
  const ArrayGeometry geom = ArrayGeometry::from_scenario(cfg);

  HeatmapGrid out;
  out.spec = grid;
  out.method = method;
  out.ris = cfg.ris_pos;
  out.ue = cfg.ue_pos;
  out.metrics = design.metrics;
  for (double t : channels.theta_targets) out.target_angles_deg.push_back(rad_to_deg(t));
  const int nx = grid.nx();
  const int ny = grid.ny();
  for (int i = 0; i < nx; ++i) out.xs.push_back(grid.x_min + (i + 0.5) * grid.resolution_x);
  for (int j = 0; j < ny; ++j) out.ys.push_back(grid.y_min + (j + 0.5) * grid.resolution_y);
  out.gain_db.resize(ny, nx);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Position p{out.xs[static_cast<std::size_t>(i)], out.ys[static_cast<std::size_t>(j)]};
      // A cell centred exactly on the RIS has no direction; use the +x axis.
      const double theta = p == cfg.ris_pos ? 0.0 : angle_from_positions(cfg.ris_pos, p);
      const double g = beampattern_gain(design.v, ris_steering_rx(geom, theta), channels.g2, consts);
      out.gain_db(j, i) = linear_to_db(g);
    }
  }
  return out;
}

// --- sweeps ------------------------------------------------------------------

std::optional<SweepResult::Mean> SweepResult::mean(double axis_value, const std::string& method) const {
  Mean m;
  for (const auto& r : rows) {
    if (r.axis != axis_value || r.method != method) continue;
    if (m.samples == 0) m.gains_db.assign(r.gains_db.size(), 0.0);
    m.gamma_db += r.gamma_db;
    for (std::size_t k = 0; k < r.gains_db.size(); ++k) m.gains_db[k] += r.gains_db[k];
    ++m.samples;
  }
  if (m.samples == 0) return std::nullopt;
  m.gamma_db /= m.samples;
  for (double& g : m.gains_db) g /= m.samples;
  return m;
}

namespace {

struct CellOutput {
  std::vector<SweepRow> rows;
  std::vector<std::string> notes;
};

// SDR relaxed bound and randomized extraction for one cell.
void append_sdr_rows(CellOutput& cell, double axis, const ScenarioConfig& cfg,
                     const ChannelSet& channels, const SystemConstants& consts,
                     const ExperimentOptions& options, std::uint64_t seed) {
  try {
    const MethodDesign d = design_method(Method::sdr, cfg, channels, consts, options, seed);
    const SdpProblem problem = make_sdp_problem(channels, consts, upper_bounds(cfg, consts));
    SweepRow ub{axis, kSdrUpperBound, seed, linear_to_db(d.sdr->relaxed_objective), {}};
    for (const auto& psi : problem.psi_targets) {
      const double g = (psi.conjugate().cwiseProduct(d.sdr->V)).sum().real();
      ub.gains_db.push_back(linear_to_db(std::max(g, 0.0)));
    }
    cell.rows.push_back(std::move(ub));
    cell.rows.push_back({axis, kSdrRandomized, seed, d.metrics.snr_db, gains_db(d.metrics)});
  } catch (const NumericalError& e) {
    cell.notes.push_back("SDR skipped at axis " + format_number(axis) + ", seed " +
                         std::to_string(seed) + ": " + e.what());
  }
}

SweepResult merge_cells(std::string axis_name, const std::vector<double>& axis,
                        std::vector<std::string> methods, const std::vector<std::uint64_t>& seeds,
                        std::vector<CellOutput>& cells) {
  SweepResult r;
  r.axis_name = std::move(axis_name);
  r.axis = axis;
  r.methods = std::move(methods);
  r.seeds = seeds;
  for (auto& c : cells) {
    for (auto& row : c.rows) r.rows.push_back(std::move(row));
    for (auto& n : c.notes) r.notes.push_back(std::move(n));
  }
  return r;
}

std::vector<std::uint64_t> require_seeds(const ExperimentOptions& options) {
  if (options.seeds.empty()) throw ConfigError("at least one seed is required", "seeds");
  return options.seeds;
}

}  // namespace

SweepResult sweep_alpha(const ScenarioConfig& cfg, const std::vector<double>& alphas,
                        const std::vector<LambdaPolicy>& policies, const ExperimentOptions& options) {
  validate(cfg);
  if (alphas.empty()) throw ConfigError("alpha sweep needs at least one alpha", "alphas");
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alphas must lie in [0, 1]", "alphas");
  }
  if (policies.empty()) throw ConfigError("alpha sweep needs at least one lambda policy", "lambda_policy");
  const auto seeds = require_seeds(options);
  const bool with_sdr = sdr_allowed(cfg, options);

  std::vector<CellOutput> cells(alphas.size() * seeds.size());
  parallel_for(cells.size(), options.threads, [&](std::size_t idx) {
    const double alpha = alphas[idx / seeds.size()];
    const std::uint64_t seed = seeds[idx % seeds.size()];
    ScenarioConfig c = cfg;
    c.alpha = alpha;
    Rng rng(seed);
    const ChannelSet channels = build_channels(c, rng);
    const SystemConstants consts = make_constants(c, channels);
    CellOutput& out = cells[idx];
    for (const auto& policy : policies) {
      const ProposedDesign d = design_proposed(channels, consts, alpha, c.weights(), policy);
      out.rows.push_back({alpha, policy.to_string(), seed, d.metrics.snr_db, gains_db(d.metrics)});
    }
    if (with_sdr) append_sdr_rows(out, alpha, c, channels, consts, options, seed);
  });

  std::vector<std::string> methods;
  for (const auto& p : policies) methods.push_back(p.to_string());
  if (with_sdr) {
    methods.push_back(kSdrUpperBound);
    methods.push_back(kSdrRandomized);
  }
  SweepResult r = merge_cells("alpha", alphas, std::move(methods), seeds, cells);
  if (!with_sdr) r.notes.insert(r.notes.begin(), sdr_skip_note(cfg, options));
  return r;
}

SweepResult sweep_weight_ratio(const ScenarioConfig& cfg, const std::vector<double>& ratios,
                               double alpha, const ExperimentOptions& options) {
  validate(cfg);
  if (cfg.target_count() != 2) throw ConfigError("weight sweep needs exactly two targets", "targets");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]", "alpha");
  if (ratios.empty()) throw ConfigError("weight sweep needs at least one ratio", "ratios");
  for (double r : ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("weight ratios must be positive", "ratios");
  }
  const auto seeds = require_seeds(options);
  const bool with_sdr = sdr_allowed(cfg, options);

  std::vector<CellOutput> cells(ratios.size() * seeds.size());
  parallel_for(cells.size(), options.threads, [&](std::size_t idx) {
    const double ratio = ratios[idx / seeds.size()];
    const std::uint64_t seed = seeds[idx % seeds.size()];
    ScenarioConfig c = with_weights(cfg, {ratio / (1.0 + ratio), 1.0 / (1.0 + ratio)});
    c.alpha = alpha;
    Rng rng(seed);
    const ChannelSet channels = build_channels(c, rng);
    const SystemConstants consts = make_constants(c, channels);
    CellOutput& out = cells[idx];
    const ProposedDesign d = design_proposed(channels, consts, alpha, c.weights(), c.lambda_policy);
    out.rows.push_back({ratio, "proposed", seed, d.metrics.snr_db, gains_db(d.metrics)});
    if (with_sdr) append_sdr_rows(out, ratio, c, channels, consts, options, seed);
  });

  std::vector<std::string> methods{"proposed"};
  if (with_sdr) {
    methods.push_back(kSdrUpperBound);
    methods.push_back(kSdrRandomized);
  }
  SweepResult r = merge_cells("ratio", ratios, std::move(methods), seeds, cells);
  if (!with_sdr) r.notes.insert(r.notes.begin(), sdr_skip_note(cfg, options));
  return r;
}

// --- beampattern versus angle ------------------------------------------------

std::vector<double> angle_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ConfigError("angle grid needs step > 0 and hi >= lo", "scan");
  const double span = (hi - lo) / step;
  const long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

AoaScan beampattern_vs_aoa(const ScenarioConfig& cfg, double band_lo_deg, double band_hi_deg,
                           double band_resolution_deg, const std::vector<double>& scan_deg,
                           const ExperimentOptions& options) {
  if (!(band_resolution_deg > 0.0) || !(band_hi_deg >= band_lo_deg)) {
    throw ConfigError("target band needs hi >= lo and a positive resolution", "band");
  }
  const double steps = (band_hi_deg - band_lo_deg) / band_resolution_deg;
  if (std::abs(steps - std::round(steps)) > 1e-9) {
    throw ConfigError("band resolution must divide the target band", "band");
  }
  if (scan_deg.empty()) throw ConfigError("scan grid is empty", "scan");
  const auto seeds = require_seeds(options);

  AoaScan scan;
  scan.band_angles_deg = angle_grid(band_lo_deg, band_hi_deg, band_resolution_deg);
  scan.scan_deg = scan_deg;
  const std::size_t k_count = scan.band_angles_deg.size();
  ScenarioConfig c = cfg;
  c.targets.clear();
  for (double a : scan.band_angles_deg) c.targets.push_back({TargetAngle{a}, 1.0 / static_cast<double>(k_count)});
  validate(c);
  scan.ue_angle_deg = rad_to_deg(angle_from_positions(c.ris_pos, c.ue_pos));

  std::vector<Method> methods{Method::comm_only, Method::proposed};
  if (sdr_allowed(c, options)) {
    methods.push_back(Method::sdr);
  } else {
    scan.notes.push_back(sdr_skip_note(c, options));
  }
  for (Method m : methods) scan.methods.push_back(to_string(m));

  const ArrayGeometry geom = ArrayGeometry::from_scenario(c);
  std::vector<ComplexVector> steering;
  steering.reserve(scan_deg.size() + 1);
  for (double a : scan_deg) steering.push_back(ris_steering_rx(geom, deg_to_rad(a)));
  steering.push_back(ris_steering_rx(geom, deg_to_rad(scan.ue_angle_deg)));

  // per seed: [method][scan point + UE] in dB, NaN when the method failed
  std::vector<std::vector<std::vector<double>>> per_seed(seeds.size());
  std::vector<std::vector<std::string>> seed_notes(seeds.size());
  parallel_for(seeds.size(), options.threads, [&](std::size_t s) {
    Rng rng(seeds[s]);
    const ChannelSet channels = build_channels(c, rng);
    const SystemConstants consts = make_constants(c, channels);
    auto& out = per_seed[s];
    for (Method m : methods) {
      std::vector<double> row(steering.size(), std::numeric_limits<double>::quiet_NaN());
      try {
        const MethodDesign d = design_method(m, c, channels, consts, options, seeds[s]);
        for (std::size_t i = 0; i < steering.size(); ++i) {
          row[i] = linear_to_db(beampattern_gain(d.v, steering[i], channels.g2, consts));
        }
      } catch (const NumericalError& e) {
        seed_notes[s].push_back(to_string(m) + " skipped for seed " + std::to_string(seeds[s]) + ": " +
                                e.what());
      }
      out.push_back(std::move(row));
    }
  });

  scan.gain_db.assign(methods.size(), std::vector<double>(scan_deg.size(), 0.0));
  scan.ue_gain_db.assign(methods.size(), 0.0);
  for (std::size_t m = 0; m < methods.size(); ++m) {
    int used = 0;
    std::vector<double> acc(steering.size(), 0.0);
    for (const auto& seed_rows : per_seed) {
      const auto& row = seed_rows[m];
      if (std::isnan(row.front())) continue;
      for (std::size_t i = 0; i < row.size(); ++i) acc[i] += row[i];
      ++used;
    }
    if (used == 0) {
      scan.notes.push_back(to_string(methods[m]) + " produced no designs");
      continue;
    }
    for (std::size_t i = 0; i < scan_deg.size(); ++i) scan.gain_db[m][i] = acc[i] / used;
    scan.ue_gain_db[m] = acc.back() / used;
  }
  for (auto& n : seed_notes) {
    for (auto& s : n) scan.notes.push_back(std::move(s));
  }
  return scan;
}

// --- complexity probe ----------------------------------------------------------

std::pair<int, int> planar_shape(int n_elements) {
  if (n_elements < 1) throw ConfigError("element count must be positive", "n_elements");
  int rows = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n_elements))));
  while (n_elements % rows != 0) --rows;
  return {rows, n_elements / rows};
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

template <class F>
double median_seconds(int repeats, F&& fn) {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  return median(std::move(times));
}

}  // namespace

std::vector<ComplexityRow> run_complexity_probe(const ScenarioConfig& base,
                                                const std::vector<int>& n_list, int k_targets,
                                                int repeats, const ExperimentOptions& options) {
  if (repeats < 1) throw ConfigError("complexity probe needs repeats >= 1", "repeats");
  if (k_targets < 1) throw ConfigError("complexity probe needs at least one target", "targets");
  if (n_list.empty()) throw ConfigError("complexity probe needs at least one N", "n_list");

  std::vector<ComplexityRow> rows;
  for (int n : n_list) {
    ScenarioConfig c = base;
    const auto [nv, nh] = planar_shape(n);
    c.ris_rows = nv;
    c.ris_cols = nh;
    c.targets.clear();
    for (int k = 0; k < k_targets; ++k) {
      const double angle = k_targets == 1 ? 90.0 : 60.0 + 60.0 * k / (k_targets - 1);
      c.targets.push_back({TargetAngle{angle}, 1.0 / k_targets});
    }
    const std::uint64_t seed = primary_realization_seed(c.seed);
    Rng rng(seed);
    const ChannelSet channels = build_channels(c, rng);
    const SystemConstants consts = make_constants(c, channels);
    const std::vector<double> weights = c.weights();

    const double t_prop = median_seconds(repeats, [&] {
      const ProposedDesign d = design_proposed(channels, consts, c.alpha, weights, c.lambda_policy);
      if (!d.report.delta_phi.allFinite()) throw NumericalError("complexity probe: bad solution");
    });
    rows.push_back({n, "proposed", t_prop});

    if (options.include_sdr && n <= options.sdr_cap) {
      const double t_sdr = median_seconds(repeats, [&] {
        (void)design_method(Method::sdr, c, channels, consts, options, seed);
      });
      rows.push_back({n, "sdr", t_sdr});
    }
  }
  return rows;
}

double loglog_slope(const std::vector<ComplexityRow>& rows, const std::string& method) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : rows) {
    if (r.method != method || !(r.median_seconds > 0.0)) continue;
    xs.push_back(std::log(static_cast<double>(r.n_elements)));
    ys.push_back(std::log(r.median_seconds));
  }
  if (xs.size() < 2) throw ConfigError("slope fit needs at least two sizes", "n_list");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// --- CSV -----------------------------------------------------------------------

namespace {
std::size_t gain_columns(const SweepResult& r) {
  std::size_t k = 0;
  for (const auto& row : r.rows) k = std::max(k, row.gains_db.size());
  return k;
}
}  // namespace

void write_alpha_sweep_csv(std::ostream& out, const SweepResult& r) {
  CsvWriter csv(out);
  std::vector<std::string> cols{"alpha", "lambda_policy", "seed", "gamma_db"};
  const std::size_t k = gain_columns(r);
  for (std::size_t i = 1; i <= k; ++i) cols.push_back("gain_t" + std::to_string(i) + "_db");
  csv.header(cols);
  for (const auto& row : r.rows) {
    csv.field(row.axis).field(row.method).field(row.seed).field(row.gamma_db);
    for (double g : row.gains_db) csv.field(g);
    csv.end_row();
  }
}

void write_weight_sweep_csv(std::ostream& out, const SweepResult& r) {
  CsvWriter csv(out);
  csv.header({"ratio", "seed", "gamma_db", "gain_t1_db", "gain_t2_db"});
  for (const auto& row : r.rows) {
    if (row.method != "proposed") continue;
    csv.field(row.axis).field(row.seed).field(row.gamma_db);
    for (double g : row.gains_db) csv.field(g);
    csv.end_row();
  }
}

void write_weight_sweep_sdr_csv(std::ostream& out, const SweepResult& r) {
  CsvWriter csv(out);
  csv.header({"ratio", "method", "seed", "gamma_db", "gain_t1_db", "gain_t2_db"});
  for (const auto& row : r.rows) {
    if (row.method == "proposed") continue;
    csv.field(row.axis).field(row.method).field(row.seed).field(row.gamma_db);
    for (double g : row.gains_db) csv.field(g);
    csv.end_row();
  }
}

void write_aoa_scan_csv(std::ostream& out, const AoaScan& scan) {
  CsvWriter csv(out);
  csv.header({"angle_deg", "method", "gain_db"});
  for (std::size_t i = 0; i < scan.scan_deg.size(); ++i) {
    for (std::size_t m = 0; m < scan.methods.size(); ++m) {
      csv.field(scan.scan_deg[i]).field(scan.methods[m]).field(scan.gain_db[m][i]);
      csv.end_row();
    }
  }
}

void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid) {
  CsvWriter csv(out);
  csv.header({"x_m", "y_m", "gain_db"});
  for (std::size_t j = 0; j < grid.ys.size(); ++j) {
    for (std::size_t i = 0; i < grid.xs.size(); ++i) {
      csv.field(grid.xs[i]).field(grid.ys[j]).field(grid.gain_db(static_cast<Eigen::Index>(j),
                                                                  static_cast<Eigen::Index>(i)));
      csv.end_row();
    }
  }
}

void write_complexity_csv(std::ostream& out, const std::vector<ComplexityRow>& rows) {
  CsvWriter csv(out);
  csv.header({"n_elements", "method", "median_seconds"});
  for (const auto& r : rows) {
    csv.field(r.n_elements).field(r.method).field(r.median_seconds);
    csv.end_row();
  }
}

}  // namespace risisac
