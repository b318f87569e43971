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

#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "risisac/error.hpp"
#include "risisac/experiments.hpp"
#include "risisac/scenario.hpp"
#include "risisac/version.hpp"

namespace risisac::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Flags {
  std::string scenario;
  std::string out = "out";
  std::uint64_t seed = 0;
  int seeds = kDefaultMonteCarloSeeds;
  double alpha = 0.0;
  std::string alphas = "0,0.25,0.5,0.75,1";
  std::string lambda_policy;
  std::string method = "proposed";
  int sdr_cap = kDefaultSdrCap;
  int sdr_trials = kDefaultRandomizationTrials;
  unsigned threads = 0;
  std::string ratios = "0.1,0.2,0.5,1,2,5,10";
  std::string band = "85,95";
  double band_resolution = 1.0;
  std::string scan = "-180,180,1";
  double resolution = 1.0;
  std::string n_list = "16,32,64,128,256,512";
  int targets = 2;
  int repeats = 5;

  bool seed_set = false;
  bool alpha_set = false;
};

std::vector<double> parse_doubles(const std::string& text, const char* field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw ConfigError(std::string(field) + ": cannot parse '" + item + "' as a number", field);
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(std::string(field) + ": empty list", field);
  return out;
}

std::vector<int> parse_ints(const std::string& text, const char* field) {
  std::vector<int> out;
  for (double v : parse_doubles(text, field)) {
    if (v != std::floor(v) || v < 1) throw ConfigError(std::string(field) + ": expected positive integers", field);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<LambdaPolicy> parse_policies(const std::string& text) {
  std::vector<LambdaPolicy> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(LambdaPolicy::parse(item));
  if (out.empty()) throw ConfigError("lambda_policy: empty list", "lambda_policy");
  return out;
}

double to_db(double linear) { return linear_to_db(linear); }

json metrics_json(const Metrics& m) {
  json gains = json::array();
  for (const auto& g : m.gains) gains.push_back(g.db);
  return {{"gamma_db", m.snr_db}, {"gains_db", gains}};
}

class Session {
 public:
  Session(const Flags& flags, std::vector<std::string> argv, std::ostream& out, std::ostream& err)
      : flags_(flags), argv_(std::move(argv)), out_(out), err_(err),
        start_(std::chrono::steady_clock::now()) {}

  ScenarioConfig load() const {
    ScenarioConfig cfg = flags_.scenario.empty() ? reference_scenario() : load_scenario(flags_.scenario);
    if (flags_.seed_set) cfg.seed = flags_.seed;
    if (flags_.alpha_set) cfg.alpha = flags_.alpha;
    if (!flags_.lambda_policy.empty() && flags_.lambda_policy.find(',') == std::string::npos) {
      cfg.lambda_policy = LambdaPolicy::parse(flags_.lambda_policy);
    }
    validate(cfg);
    return cfg;
  }

  ExperimentOptions options(const ScenarioConfig& cfg) const {
    if (flags_.sdr_cap < 0) throw ConfigError("sdr_cap must be nonnegative", "sdr_cap");
    if (flags_.sdr_trials < 1) throw ConfigError("sdr_trials must be positive", "sdr_trials");
    ExperimentOptions o;
    o.seeds = monte_carlo_seeds(cfg.seed, flags_.seeds);
    o.sdr_cap = flags_.sdr_cap;
    o.sdr_trials = flags_.sdr_trials;
    o.threads = flags_.threads;
    return o;
  }

  int solve() {
    const ScenarioConfig cfg = load();
    const Method method = parse_method(flags_.method);
    ExperimentOptions opts = options(cfg);
    const std::uint64_t seed = primary_realization_seed(cfg.seed);
    opts.seeds = {seed};
    json params = {{"method", to_string(method)}, {"sdr_cap", opts.sdr_cap}, {"sdr_trials", opts.sdr_trials}};
    if (!flags_.out.empty() && out_given_) begin_manifest(cfg, "solve", opts.seeds, params);

    Rng rng(seed);
    const ChannelSet channels = build_channels(cfg, rng);
    const SystemConstants consts = make_constants(cfg, channels);
    const MethodDesign d = design_method(method, cfg, channels, consts, opts, seed);

    json summary = metrics_json(d.metrics);
    summary["method"] = to_string(method);
    summary["seed"] = seed;
    summary["alpha"] = cfg.alpha;
    summary["ris_elements"] = cfg.ris_elements();
    json ub = json::array();
    for (int k = 0; k < cfg.target_count(); ++k) {
      ub.push_back(to_db(gain_upper_bound(cfg.alpha, cfg.targets[static_cast<std::size_t>(k)].weight, consts,
                                          cfg.ris_elements())));
    }
    summary["upper_bounds_db"] = ub;
    if (d.proposed) {
      const auto& r = d.proposed->report;
      summary["lambda_policy"] = cfg.lambda_policy.to_string();
      summary["lambda"] = r.lambda_used;
      summary["sigma_max"] = d.proposed->system.sigma_max();
      summary["max_abs_delta_phi"] = r.max_abs_perturbation;
      summary["objective"] = r.objective_value;
      for (const auto& w : d.proposed->system.warnings) notes_.push_back(w);
    }
    if (d.sdr) {
      summary["relaxed_objective_db"] = to_db(d.sdr->relaxed_objective);
      summary["sdp_iterations"] = d.sdr->iterations;
    }
    if (!notes_.empty()) summary["notes"] = notes_;
    if (out_given_) {
      write_file("solution.json", summary.dump(2) + "\n");
      finish_manifest();
    }
    out_ << summary.dump(2) << "\n";
    return kExitOk;
  }

  int experiment(const std::string& name) {
    if (name == "heatmap") return heatmap();
    if (name == "alpha-sweep") return alpha_sweep();
    if (name == "weight-sweep") return weight_sweep();
    if (name == "aoa-scan") return aoa_scan();
    if (name == "complexity") return complexity();
    throw ConfigError("unknown experiment '" + name +
                          "'; expected heatmap, alpha-sweep, weight-sweep, aoa-scan or complexity",
                      "experiment");
  }

  int validate_only() {
    const ScenarioConfig cfg = load();
    // Building the geometry catches coincident nodes without running solvers.
    (void)angle_from_positions(cfg.bs_pos, cfg.ris_pos);
    (void)angle_from_positions(cfg.ris_pos, cfg.ue_pos);
    for (int k = 0; k < cfg.target_count(); ++k) (void)target_angle(cfg, k);
    out_ << json{{"valid", true}, {"ris_elements", cfg.ris_elements()}, {"targets", cfg.target_count()}}.dump()
         << "\n";
    return kExitOk;
  }

  void set_out_given(bool given) { out_given_ = given; }

 private:
  int heatmap() {
    const ScenarioConfig cfg = load();
    const Method method = parse_method(flags_.method);
    ExperimentOptions opts = options(cfg);
    opts.seeds = {primary_realization_seed(cfg.seed)};
    GridSpec grid;
    grid.resolution_x = grid.resolution_y = flags_.resolution;
    begin_manifest(cfg, "heatmap", opts.seeds,
                   {{"method", to_string(method)}, {"resolution_m", flags_.resolution}, {"sdr_cap", opts.sdr_cap},
                    {"sdr_trials", opts.sdr_trials}});
    const HeatmapGrid h = run_heatmap(cfg, grid, method, opts);
    std::ostringstream csv;
    write_heatmap_csv(csv, h);
    write_file("heatmap.csv", csv.str());
    json meta = metrics_json(h.metrics);
    meta["method"] = to_string(method);
    meta["ris"] = {h.ris.x, h.ris.y};
    meta["ue"] = {h.ue.x, h.ue.y};
    meta["target_angles_deg"] = h.target_angles_deg;
    meta["nx"] = grid.nx();
    meta["ny"] = grid.ny();
    write_file("heatmap_markers.json", meta.dump(2) + "\n");
    return done({"heatmap.csv", "heatmap_markers.json"});
  }

  int alpha_sweep() {
    const ScenarioConfig cfg = load();
    const ExperimentOptions opts = options(cfg);
    const auto alphas = parse_doubles(flags_.alphas, "alphas");
    const auto policies =
        parse_policies(flags_.lambda_policy.empty() ? "adaptive,fixed:0.1,fixed:0.5" : flags_.lambda_policy);
    json pol = json::array();
    for (const auto& p : policies) pol.push_back(p.to_string());
    begin_manifest(cfg, "alpha-sweep", opts.seeds,
                   {{"alphas", alphas}, {"lambda_policies", pol}, {"sdr_cap", opts.sdr_cap},
                    {"sdr_trials", opts.sdr_trials}});
    const SweepResult r = sweep_alpha(cfg, alphas, policies, opts);
    std::ostringstream csv;
    write_alpha_sweep_csv(csv, r);
    write_file("alpha_sweep.csv", csv.str());
    notes_ = r.notes;
    return done({"alpha_sweep.csv"});
  }

  int weight_sweep() {
    ScenarioConfig cfg = load();
    if (!flags_.alpha_set) cfg.alpha = 0.5;
    const ExperimentOptions opts = options(cfg);
    const auto ratios = parse_doubles(flags_.ratios, "ratios");
    begin_manifest(cfg, "weight-sweep", opts.seeds,
                   {{"ratios", ratios}, {"alpha", cfg.alpha}, {"sdr_cap", opts.sdr_cap},
                    {"sdr_trials", opts.sdr_trials}});
    const SweepResult r = sweep_weight_ratio(cfg, ratios, cfg.alpha, opts);
    std::ostringstream csv;
    write_weight_sweep_csv(csv, r);
    write_file("weight_sweep.csv", csv.str());
    std::vector<std::string> files{"weight_sweep.csv"};
    if (r.methods.size() > 1) {
      std::ostringstream sdr;
      write_weight_sweep_sdr_csv(sdr, r);
      write_file("weight_sweep_sdr.csv", sdr.str());
      files.push_back("weight_sweep_sdr.csv");
    }
    notes_ = r.notes;
    return done(files);
  }

  int aoa_scan() {
    ScenarioConfig cfg = load();
    if (!flags_.alpha_set) cfg.alpha = 0.5;
    const ExperimentOptions opts = options(cfg);
    const auto band = parse_doubles(flags_.band, "band");
    const auto scan = parse_doubles(flags_.scan, "scan");
    if (band.size() != 2) throw ConfigError("band: expected lo,hi", "band");
    if (scan.size() != 3) throw ConfigError("scan: expected lo,hi,step", "scan");
    const auto grid = angle_grid(scan[0], scan[1], scan[2]);
    begin_manifest(cfg, "aoa-scan", opts.seeds,
                   {{"band_deg", band}, {"band_resolution_deg", flags_.band_resolution}, {"scan_deg", scan},
                    {"alpha", cfg.alpha}, {"sdr_cap", opts.sdr_cap}, {"sdr_trials", opts.sdr_trials}});
    const AoaScan s = beampattern_vs_aoa(cfg, band[0], band[1], flags_.band_resolution, grid, opts);
    std::ostringstream csv;
    write_aoa_scan_csv(csv, s);
    write_file("aoa_scan.csv", csv.str());
    notes_ = s.notes;
    extra_["ue_angle_deg"] = s.ue_angle_deg;
    return done({"aoa_scan.csv"});
  }

  int complexity() {
    const ScenarioConfig cfg = load();
    ExperimentOptions opts = options(cfg);
    opts.seeds = {primary_realization_seed(cfg.seed)};
    const auto n_list = parse_ints(flags_.n_list, "n_list");
    begin_manifest(cfg, "complexity", opts.seeds,
                   {{"n_list", n_list}, {"targets", flags_.targets}, {"repeats", flags_.repeats},
                    {"sdr_cap", opts.sdr_cap}, {"sdr_trials", opts.sdr_trials}});
    const auto rows = run_complexity_probe(cfg, n_list, flags_.targets, flags_.repeats, opts);
    std::ostringstream csv;
    write_complexity_csv(csv, rows);
    write_file("complexity.csv", csv.str());
    try {
      extra_["proposed_loglog_slope"] = loglog_slope(rows, "proposed");
    } catch (const ConfigError&) {
      // fewer than two sizes: no slope
    }
    return done({"complexity.csv"});
  }

  void begin_manifest(const ScenarioConfig& cfg, const std::string& command,
                      const std::vector<std::uint64_t>& seeds, json params) {
    fs::create_directories(flags_.out);
    manifest_ = {{"tool", "risisac"},
                 {"version", kVersion},
                 {"command", command},
                 {"argv", argv_},
                 {"scenario_path", flags_.scenario},
                 {"config", json::parse(scenario_to_json(cfg))},
                 {"seeds", seeds},
                 {"parameters", std::move(params)},
                 {"out_dir", flags_.out},
                 {"wall_time_s", nullptr}};
    write_file("manifest.json", manifest_.dump(2) + "\n");
  }

  void finish_manifest() {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    manifest_["wall_time_s"] = wall;
    manifest_["notes"] = notes_;
    write_file("manifest.json", manifest_.dump(2) + "\n");
  }

  int done(const std::vector<std::string>& files) {
    finish_manifest();
    for (const auto& n : notes_) err_ << "note: " << n << "\n";
    json summary = {{"command", manifest_["command"]}, {"out_dir", flags_.out}, {"files", files}, {"notes", notes_}};
    for (const auto& [k, v] : extra_.items()) summary[k] = v;
    out_ << summary.dump() << "\n";
    return kExitOk;
  }

  void write_file(const std::string& name, const std::string& content) const {
    const fs::path path = fs::path(flags_.out) / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    if (!f) throw ConfigError("cannot write '" + path.string() + "'", "out");
  }

  const Flags& flags_;
  std::vector<std::string> argv_;
  std::ostream& out_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
  json manifest_;
  json extra_ = json::object();
  std::vector<std::string> notes_;
  bool out_given_ = true;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--scenario", f.scenario, "Scenario JSON file (default: built-in reference setup)");
  sub->add_option("--seed", f.seed, "Base seed; overrides the scenario file");
  sub->add_option("--alpha", f.alpha, "Communication/sensing trade-off in [0, 1]");
  sub->add_option("--lambda-policy", f.lambda_policy, "adaptive or fixed:<c>; comma list for alpha-sweep");
  sub->add_option("--method", f.method, "proposed, sdr or comm-only");
  sub->add_option("--sdr-cap", f.sdr_cap, "Largest RIS size for which SDR is attempted");
  sub->add_option("--sdr-trials", f.sdr_trials, "Gaussian randomization trials");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags flags;
  CLI::App app{"Closed-form RIS phase design for integrated sensing and communication", "risisac"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto* solve = app.add_subcommand("solve", "Design RIS phases for one channel realization");
  add_common(solve, flags);
  auto* solve_out = solve->add_option("--out", flags.out, "Also write manifest.json and solution.json here");

  std::string experiment_name;
  auto* experiment = app.add_subcommand("experiment", "Run a sweep and write CSV files");
  experiment->add_option("name", experiment_name, "heatmap, alpha-sweep, weight-sweep, aoa-scan or complexity")
      ->required();
  add_common(experiment, flags);
  experiment->add_option("--out", flags.out, "Output directory")->capture_default_str();
  experiment->add_option("--seeds", flags.seeds, "Number of channel realizations")->capture_default_str();
  experiment->add_option("--alphas", flags.alphas, "alpha-sweep: comma-separated alphas")->capture_default_str();
  experiment->add_option("--ratios", flags.ratios, "weight-sweep: comma-separated zeta1/zeta2")
      ->capture_default_str();
  experiment->add_option("--band", flags.band, "aoa-scan: target band lo,hi in degrees")->capture_default_str();
  experiment->add_option("--band-resolution", flags.band_resolution, "aoa-scan: band sampling in degrees")
      ->capture_default_str();
  experiment->add_option("--scan", flags.scan, "aoa-scan: scan grid lo,hi,step in degrees")->capture_default_str();
  experiment->add_option("--resolution", flags.resolution, "heatmap: meters per cell")->capture_default_str();
  experiment->add_option("--n-list", flags.n_list, "complexity: RIS sizes")->capture_default_str();
  experiment->add_option("--targets", flags.targets, "complexity: number of targets")->capture_default_str();
  experiment->add_option("--repeats", flags.repeats, "complexity: timing repeats")->capture_default_str();
  experiment->add_option("--threads", flags.threads, "Worker threads (0: all cores)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file without solving");
  validate_cmd->add_option("--scenario", flags.scenario, "Scenario JSON file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto count = [&](CLI::App* sub, const char* name) { return sub->parsed() && sub->count(name) > 0; };
  flags.seed_set = count(solve, "--seed") || count(experiment, "--seed");
  flags.alpha_set = count(solve, "--alpha") || count(experiment, "--alpha");

  Session session(flags, args, out, err);
  try {
    if (solve->parsed()) {
      session.set_out_given(solve_out->count() > 0);
      return session.solve();
    }
    if (experiment->parsed()) return session.experiment(experiment_name);
    return session.validate_only();
  } catch (const ConfigError& e) {
    err << "error: " << e.what();
    if (!e.field().empty()) err << " [field: " << e.field() << "]";
    err << "\n";
    return kExitConfig;
  } catch (const DegenerateGeometry& e) {
    err << "error: degenerate geometry: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const Error& e) {
    err << "error: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace risisac::cli
