/*
 * test_prediction.cpp
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

#include <cmath>
#include <numbers>

#include "doctest.h"

#include "crowdsense/error.hpp"
#include "crowdsense/prediction.hpp"
#include "crowdsense/scenarios.hpp"
#include "support.hpp"

using namespace crowdsense;

namespace {

std::map<PedId, ParamBounds> open_bounds(const CrowdFrame& f) {
  std::map<PedId, ParamBounds> b;
  for (const auto& [id, s] : f.states) b[id] = ParamBounds::unbounded();
  return b;
}

PredictedTrack along(PedId id, std::int64_t start, const std::vector<Vec2>& pts) {
  return {id, start, static_cast<double>(start) * 0.1, 0.1, pts};
}

// Truth track whose steps 1..10 sit a fixed distance from a straight prediction.
std::pair<PredictedTrack, Track> offset_pair(PedId id, double offset) {
  PredictedTrack p{id, 0, 0.0, 0.1, {}};
  Track t{id, 0, 0.1, {}};
  for (int k = 0; k <= 10; ++k) {
    p.positions.push_back({0.1 * k, 3.0 * id});
    t.positions.push_back({0.1 * k, 3.0 * id + offset});
  }
  return {p, t};
}

Vec2 rot(const Vec2& v, double a) {
  return {std::cos(a) * v.x - std::sin(a) * v.y, std::sin(a) * v.x + std::cos(a) * v.y};
}

std::vector<Track> linear_tracks(int count, std::uint64_t seed) {
  testing::Gen g(seed);
  std::vector<Track> out;
  for (int i = 0; i < count; ++i) {
    Track t{i + 1, g.integer(0, 20), 0.1, {}};
    const Vec2 p0 = g.point(10), v = g.point(1.2);
    const int n = g.integer(80, 140);
    for (int k = 0; k < n; ++k) t.positions.push_back(p0 + v * (0.1 * k));
    out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("predict: free-space walker covers 7 m in 5 s") {
  CrowdFrame f;
  f.states[1] = {{2, -1}, {1.4, 0}, {1.4, 0}};
  MotionModel m;
  m.pref_speed = 1.4;
  const auto out = predict(f, {{1, m}}, open_bounds(f), {{1, {200, -1}}}, {});
  const auto& t = out.at(1);
  REQUIRE(t.positions.size() == 51);
  CHECK(testing::near(t.positions.back(), {9.0, -1.0}, 1e-9));
}

TEST_CASE("predict: zero horizon returns the current position") {
  CrowdFrame f;
  f.step = 12;
  f.time = 1.2;
  f.states[4] = {{1, 1}, {1, 0}, {1, 0}};
  PredictionConfig cfg;
  cfg.horizon = 0.0;
  const auto out = predict(f, {{4, MotionModel{}}}, open_bounds(f), {{4, {9, 9}}}, {}, cfg);
  REQUIRE(out.at(4).positions.size() == 1);
  CHECK(out.at(4).positions[0] == Vec2{1, 1});
  CHECK(out.at(4).start_step == 12);
}

TEST_CASE("predict: self-prediction reproduces the generator exactly") {
  const MotionModel a{15, 10, 30, 0.4, 1.3}, b{12, 5, 25, 0.5, 1.1};
  const std::map<PedId, MotionModel> models{{1, a}, {2, b}};
  const std::map<PedId, Vec2> goals{{1, {8, 0}}, {2, {0.3, 8}}};
  CrowdFrame f;
  f.states[1] = {{-8, 0}, {}, {}};
  f.states[2] = {{0.3, -8}, {}, {}};
  std::vector<CrowdFrame> generated{f};
  for (int k = 0; k < 80; ++k) generated.push_back(step_crowd(generated.back(), models, goals, {}, 0.1));

  PredictionConfig cfg;
  cfg.horizon = 4.0;
  cfg.resample_interval = kInfinity;
  const CrowdFrame& start = generated[30];
  const auto out = predict(start, models, open_bounds(start), goals, {}, cfg);
  for (const auto& [id, track] : out) {
    REQUIRE(track.positions.size() == 41);
    for (std::size_t k = 0; k < track.positions.size(); ++k) {
      CHECK(track.positions[k] == generated[30 + k].states.at(id).p);
    }
  }
}

TEST_CASE("predict: infinite bound width equals open bounds") {
  testing::Gen g(7);
  for (int trial = 0; trial < 10; ++trial) {
    CrowdFrame f;
    std::map<PedId, MotionModel> models;
    std::map<PedId, Vec2> goals;
    std::map<PedId, ParamBounds> wide;
    for (int i = 0; i < g.integer(1, 6); ++i) {
      f.states[i] = {g.point(5), g.point(1), {}};
      models[i] = g.model();
      goals[i] = g.point(10);
      wide[i] = compute_bounds(traits_from_params(models[i]).b, kInfinity);
    }
    PredictionConfig cfg;
    cfg.horizon = 2.0;
    const auto x = predict(f, models, wide, goals, {}, cfg);
    const auto y = predict(f, models, open_bounds(f), goals, {}, cfg);
    for (const auto& [id, t] : x) CHECK(t.positions == y.at(id).positions);
  }
}

TEST_CASE("predict: tight bounds change the rollout") {
  CrowdFrame f;
  f.states[1] = {{0, 0}, {}, {}};
  const MotionModel m{15, 10, 30, 0.4, 1.8};
  const ParamBounds slow{{1, 1, 1, 0.1, 0.5}, {50, 50, 50, 2, 1.0}};
  const auto out = predict(f, {{1, m}}, {{1, slow}}, {{1, {100, 0}}}, {});
  CHECK(out.at(1).positions.back().x == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("predict: missing inputs and bad configuration") {
  CrowdFrame f;
  f.states[1] = {};
  CHECK_THROWS_AS(predict(f, {}, open_bounds(f), {{1, {}}}, {}), MissingModel);
  CHECK_THROWS_AS(predict(f, {{1, MotionModel{}}}, {}, {{1, {}}}, {}), MissingBounds);
  PredictionConfig cfg;
  cfg.dt = 0.0;
  CHECK_THROWS_AS(predict(f, {{1, MotionModel{}}}, open_bounds(f), {{1, {}}}, {}, cfg), ConfigError);
}

TEST_CASE("accuracy: examples") {
  Predictions exact, shifted, mixed;
  std::vector<Track> truth, mixed_truth;
  for (int id = 1; id <= 3; ++id) {
    const auto [p, t] = offset_pair(id, 0.0);
    exact[id] = p;
    truth.push_back(t);
    PredictedTrack s = p;
    for (auto& q : s.positions) q.y += 1.0;
    shifted[id] = s;
  }
  CHECK(accuracy(exact, truth, 1.0).ratio == 1.0);
  CHECK(accuracy(shifted, truth, 1.0).ratio == 0.0);

  const double errors[] = {0.1, 0.5, 0.79, 0.9};
  for (int id = 1; id <= 4; ++id) {
    const auto [p, t] = offset_pair(id, errors[id - 1]);
    mixed[id] = p;
    mixed_truth.push_back(t);
  }
  const auto r = accuracy(mixed, mixed_truth, 1.0);
  CHECK(r.ratio == 0.75);
  CHECK(r.evaluated == 4);
  CHECK(r.successes == 3);
}

TEST_CASE("accuracy: pedestrians leaving mid-window are not counted") {
  auto [p1, t1] = offset_pair(1, 0.0);
  auto [p2, t2] = offset_pair(2, 0.0);
  t2.positions.resize(6);
  const auto r = accuracy({{1, p1}, {2, p2}}, std::vector<Track>{t1, t2}, 1.0);
  CHECK(r.evaluated == 1);
  t1.positions.resize(3);
  CHECK_THROWS_AS(accuracy({{1, p1}, {2, p2}}, std::vector<Track>{t1, t2}, 1.0), NoEvaluablePedestrians);
  CHECK_THROWS_AS(accuracy({{1, p1}}, std::vector<Track>{t1}, 2.0), ConfigError);
}

TEST_CASE("accuracy: invariant under joint rigid motion (property)") {
  testing::Gen g(11);
  for (int trial = 0; trial < 100; ++trial) {
    Predictions pred, moved;
    std::vector<Track> truth, truth_moved;
    const double angle = g.uniform(-std::numbers::pi, std::numbers::pi);
    const Vec2 shift = g.point(50);
    for (int id = 0; id < g.integer(1, 8); ++id) {
      PredictedTrack p{id, 5, 0.5, 0.1, {}};
      Track t{id, 0, 0.1, {}};
      for (int k = 0; k <= 25; ++k) t.positions.push_back(g.point(5));
      for (int k = 0; k <= 10; ++k) p.positions.push_back(t.positions[5 + k] + g.point(1.0));
      pred[id] = p;
      truth.push_back(t);
      for (auto& q : p.positions) q = rot(q, angle) + shift;
      for (auto& q : t.positions) q = rot(q, angle) + shift;
      moved[id] = p;
      truth_moved.push_back(t);
    }
    CHECK(accuracy(pred, truth, 1.0).successes == accuracy(moved, truth_moved, 1.0).successes);
  }
}

TEST_CASE("accuracy: worsening one pedestrian never raises the ratio (property)") {
  testing::Gen g(12);
  for (int trial = 0; trial < 200; ++trial) {
    Predictions pred;
    std::vector<Track> truth;
    const int n = g.integer(1, 8);
    for (int id = 0; id < n; ++id) {
      auto [p, t] = offset_pair(id, g.uniform(0, 1.6));
      pred[id] = p;
      truth.push_back(t);
    }
    const double before = accuracy(pred, truth, 1.0).ratio;
    const int victim = g.integer(0, n - 1);
    for (auto& q : truth[static_cast<std::size_t>(victim)].positions) q.y += g.uniform(0, 1);
    CHECK(accuracy(pred, truth, 1.0).ratio <= before);
  }
}

TEST_CASE("methods: names round-trip") {
  for (Method m : kAllMethods) CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_method("oracle"), ConfigError);
}

TEST_CASE("benchmark: constant velocity is exact on linear tracks") {
  const auto tracks = linear_tracks(6, 3);
  BenchmarkConfig cfg;
  cfg.methods = {Method::kConstantVelocity, Method::kKalman};
  const auto res = benchmark(tracks, {}, cfg);
  for (double w : {1.0, 5.0}) {
    const auto* row = res.find(Method::kConstantVelocity, w);
    REQUIRE(row != nullptr);
    CHECK(row->accuracy == 1.0);
    CHECK(row->n_pedestrians > 0);
  }
}

TEST_CASE("benchmark: pedestrian ids do not matter") {
  auto tracks = linear_tracks(5, 4);
  testing::Gen g(5);
  for (auto& t : tracks) {
    for (auto& p : t.positions) p += g.point(0.05);
  }
  BenchmarkConfig cfg;
  cfg.methods = {Method::kConstantVelocity, Method::kKalman};
  const auto a = benchmark(tracks, {}, cfg);
  auto renamed = tracks;
  const PedId ids[] = {40, 3, 17, 8, 25};
  for (std::size_t i = 0; i < renamed.size(); ++i) renamed[i].id = ids[i];
  std::swap(renamed[0], renamed[3]);
  const auto b = benchmark(renamed, {}, cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].accuracy == b.rows[i].accuracy);
    CHECK(a.rows[i].n_pedestrians == b.rows[i].n_pedestrians);
  }
}

TEST_CASE("benchmark: deterministic for a fixed seed") {
  SimulationOptions o;
  o.steps = 90;
  o.observation_noise_std = 0.05;
  o.seed = 2;
  MotionModel m;
  m.radius = 0.4;
  const auto sim = simulate_crowd(crossing_scenario(4, 6.0, 2, m), {}, o);
  BenchmarkConfig cfg;
  cfg.estimation.ensemble_size = 20;
  cfg.estimation.em_iterations = 1;
  cfg.seed = 9;
  const auto a = benchmark(sim.observed, {}, cfg);
  const auto b = benchmark(sim.observed, {}, cfg);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].accuracy == b.rows[i].accuracy);
    CHECK(a.rows[i].n_pedestrians == b.rows[i].n_pedestrians);
  }
  REQUIRE(a.series.size() == b.series.size());
  CHECK(a.find(Method::kSocioSense, 1.0)->n_pedestrians > 0);
}

TEST_CASE("benchmark: configuration and data errors") {
  BenchmarkConfig cfg;
  CHECK_THROWS_AS(benchmark({}, {}, cfg), DatasetTooShort);
  const std::vector<Track> brief{{1, 0, 0.1, std::vector<Vec2>(8, Vec2{})}};
  CHECK_THROWS_AS(benchmark(brief, {}, cfg), DatasetTooShort);
  cfg.windows = {6.0};
  CHECK_THROWS_AS(benchmark(linear_tracks(2, 1), {}, cfg), ConfigError);
}
