/*
 * bench_kernels.cpp
 * crowdsense
 *
 * SPDX-FileCopyrightText: 2026 The crowdsense Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <map>
#include <vector>

#include <benchmark/benchmark.h>

#include "crowdsense/estimation.hpp"
#include "crowdsense/rvo.hpp"
#include "crowdsense/scenarios.hpp"

using namespace crowdsense;

namespace {

struct Crowd {
  CrowdFrame frame;
  std::map<PedId, MotionModel> models;
  std::map<PedId, Vec2> goals;
};

Crowd make_crowd(int count) {
  Crowd c;
  for (const auto& a : circle_scenario(count, 0.5 * count, MotionModel{})) {
    c.frame.states[a.id] = {a.start, {}, {}};
    c.models[a.id] = a.model;
    c.goals[a.id] = a.goal;
  }
  return c;
}

void BM_StepCrowdSerial(benchmark::State& state) {
  const Crowd c = make_crowd(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_crowd_serial(c.frame, c.models, c.goals, {}, kDefaultDt));
  }
}

void BM_StepCrowdParallel(benchmark::State& state) {
  const Crowd c = make_crowd(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_crowd(c.frame, c.models, c.goals, {}, kDefaultDt));
  }
}

std::vector<Track> crossing_tracks() {
  SimulationOptions o;
  o.steps = 40;
  o.observation_noise_std = 0.05;
  MotionModel base;
  base.radius = 0.4;
  return simulate_crowd(crossing_scenario(8, 12.0, 1, base), {}, o).observed;
}

void run_estimate_all(benchmark::State& state, Execution exec) {
  const auto tracks = crossing_tracks();
  const auto fr = frames(tracks, kDefaultDt);
  const Environment env{fr, {}, nullptr};
  EstimationConfig cfg;
  cfg.ensemble_size = 50;
  cfg.em_iterations = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_all(tracks, env, NoiseConfig{}, 7, cfg, exec));
  }
}

void BM_EstimateAllSerial(benchmark::State& state) { run_estimate_all(state, Execution::kSerial); }
void BM_EstimateAllParallel(benchmark::State& state) { run_estimate_all(state, Execution::kParallel); }

}  // namespace

BENCHMARK(BM_StepCrowdSerial)->Arg(20)->Arg(100);
BENCHMARK(BM_StepCrowdParallel)->Arg(20)->Arg(100);
BENCHMARK(BM_EstimateAllSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateAllParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
