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

#include <benchmark/benchmark.h>

#include "risisac/experiments.hpp"
#include "risisac/perturbation.hpp"
#include "risisac/sdr.hpp"

namespace {

using namespace risisac;

struct Setup {
  ScenarioConfig cfg;
  ChannelSet channels;
  SystemConstants consts;
};

Setup make_setup(int n) {
  Setup s{reference_scenario(), {}, {}};
  const auto [rows, cols] = planar_shape(n);
  s.cfg.ris_rows = rows;
  s.cfg.ris_cols = cols;
  s.cfg.alpha = 0.5;
  Rng rng(primary_realization_seed(s.cfg.seed));
  s.channels = build_channels(s.cfg, rng);
  s.consts = make_constants(s.cfg, s.channels);
  return s;
}

void BM_DesignProposed(benchmark::State& state) {
  const Setup s = make_setup(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        design_proposed(s.channels, s.consts, s.cfg.alpha, s.cfg.weights(), s.cfg.lambda_policy));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DesignProposed)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_SolveSdp(benchmark::State& state) {
  const Setup s = make_setup(static_cast<int>(state.range(0)));
  const ProposedDesign p = design_proposed(s.channels, s.consts, s.cfg.alpha, s.cfg.weights(), s.cfg.lambda_policy);
  RealVector desired(static_cast<Eigen::Index>(p.upper_bounds.size()));
  for (std::size_t k = 0; k < p.upper_bounds.size(); ++k) desired(static_cast<Eigen::Index>(k)) = p.upper_bounds[k];
  const SdpProblem problem = make_sdp_problem(s.channels, s.consts, desired);
  for (auto _ : state) benchmark::DoNotOptimize(solve_sdp(problem));
}
BENCHMARK(BM_SolveSdp)->Arg(16)->Arg(36)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
