/*
 * test_datasets.cpp
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
#include <set>
#include <sstream>

#include "doctest.h"

#include "crowdsense/datasets.hpp"
#include "crowdsense/error.hpp"
#include "crowdsense/scenarios.hpp"
#include "support.hpp"

using namespace crowdsense;

namespace {

RawTrajectoryFile parse(const std::string& text, double fps) {
  std::istringstream in(text);
  return parse_trajectories(in, fps);
}

std::size_t pedestrian_count(const RawTrajectoryFile& raw) {
  std::set<PedId> ids;
  for (const auto& r : raw.rows) ids.insert(r.id);
  return ids.size();
}

}  // namespace

TEST_CASE("load: minimal file") {
  const auto raw = parse("0\t1\t0.0\t0.0\n1\t1\t0.4\t0.0\n", 2.5);
  CHECK(raw.rows.size() == 2);
  CHECK(pedestrian_count(raw) == 1);
  CHECK(raw.fps == 2.5);
}

TEST_CASE("load: header line and blank lines are skipped") {
  const auto raw = parse("# frame_id\tped_id\tx\ty\n0\t1\t0\t0\n\n1\t1\t0.1\t0\n", 10.0);
  CHECK(raw.rows.size() == 2);
}

TEST_CASE("load: errors") {
  CHECK_THROWS_AS(parse("0\t1\t0.0\t0.0\n0\t1\t0.1\t0.0\n", 10.0), DuplicateObservation);
  CHECK_THROWS_AS(parse("0\t1\tabc\t0.0\n", 10.0), ParseError);
  CHECK_THROWS_AS(parse("0\t1\t0.0\n", 10.0), ParseError);
  CHECK_THROWS_AS(parse("# only a header\n", 10.0), EmptyFile);
  CHECK_THROWS_AS(parse("0\t1\t0\t0\n1\t1\t1\t0\n", 10.0), ImplausibleSpeed);
  CHECK_THROWS_AS(parse("0\t1\t0\t0\n", 0.0), ConfigError);
  CHECK_THROWS_AS(load_trajectories("/nonexistent/trajectories.tsv", 10.0), IoError);
}

TEST_CASE("load: simulator export round-trips bit-exactly") {
  SimulationOptions opts;
  opts.steps = 99;
  opts.observation_noise_std = 0.05;
  opts.seed = 11;
  MotionModel m;
  m.radius = 0.3;
  const std::vector<SimAgent> agents{{1, {-5, 0}, {5, 0}, m, 0},
                                     {2, {5, 0.5}, {-5, 0.5}, m, 0},
                                     {3, {0, -5}, {0, 5}, m, 0}};
  const auto sim = simulate_crowd(agents, {}, opts);
  const RawTrajectoryFile raw = to_raw(sim.observed);
  std::stringstream buf;
  write_trajectories(buf, raw);
  const auto back = parse_trajectories(buf, raw.fps);
  REQUIRE(back.rows.size() == raw.rows.size());
  CHECK(pedestrian_count(back) == 3);
  for (std::size_t i = 0; i < raw.rows.size(); ++i) CHECK(back.rows[i] == raw.rows[i]);
}

TEST_CASE("resample: linear interpolation midpoint") {
  const auto res = resample(parse("0\t1\t0\t0\n1\t1\t1\t0\n", 1.0), 0.5);
  REQUIRE(res.tracks.size() == 1);
  const auto& p = res.tracks[0].positions;
  REQUIRE(p.size() == 3);
  CHECK(p[0] == Vec2{0, 0});
  CHECK(p[1] == Vec2{0.5, 0});
  CHECK(p[2] == Vec2{1, 0});
}

TEST_CASE("resample: identity at the source spacing") {
  const auto raw = parse("3\t4\t0.1\t0.2\n4\t4\t0.2\t0.25\n5\t4\t0.35\t0.3\n", 10.0);
  const auto res = resample(raw, 0.1);
  REQUIRE(res.tracks.size() == 1);
  const Track& t = res.tracks[0];
  CHECK(t.first_step == 3);
  REQUIRE(t.positions.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(t.positions[i] == Vec2{raw.rows[i].x, raw.rows[i].y});
}

TEST_CASE("resample: sinusoidal path on a fine grid") {
  // Source sampled at 25 fps; analytic path y = 0.5 sin(t).
  RawTrajectoryFile raw;
  raw.fps = 25.0;
  for (int f = 0; f <= 250; ++f) {
    const double t = f / 25.0;
    raw.rows.push_back({f, 7, 0.8 * t, 0.5 * std::sin(t)});
  }
  const auto res = resample(raw, 0.1);
  REQUIRE(res.tracks.size() == 1);
  double worst = 0.0;
  const Track& track = res.tracks[0];
  for (std::int64_t k = track.first_step; k <= track.last_step(); ++k) {
    const double t = static_cast<double>(k) * 0.1;
    worst = std::max(worst, distance(track.at_step(k), {0.8 * t, 0.5 * std::sin(t)}));
  }
  CHECK(worst < 0.02);
}

TEST_CASE("resample: single-observation pedestrians are dropped and reported") {
  const auto res = resample(parse("0\t1\t0\t0\n1\t1\t0.1\t0\n5\t2\t3\t3\n", 10.0), 0.1);
  CHECK(res.tracks.size() == 1);
  REQUIRE(res.dropped.size() == 1);
  CHECK(res.dropped[0] == 2);
}

TEST_CASE("resample: idempotent (property)") {
  testing::Gen g(5);
  for (int trial = 0; trial < 50; ++trial) {
    RawTrajectoryFile raw;
    raw.fps = g.uniform(2.0, 30.0);
    const int peds = g.integer(1, 4);
    for (int id = 0; id < peds; ++id) {
      std::int64_t frame = g.integer(0, 20);
      Vec2 p = g.point(10.0);
      const int n = g.integer(2, 30);
      for (int i = 0; i < n; ++i) {
        raw.rows.push_back({frame, id, p.x, p.y});
        const int gap = g.integer(1, 3);
        frame += gap;
        p += Vec2{g.uniform(-1, 1), g.uniform(-1, 1)} * (gap / raw.fps);
      }
    }
    const auto once = resample(raw, 0.1);
    const auto twice = resample(once.tracks, 0.1);
    REQUIRE(twice.tracks.size() == once.tracks.size());
    for (std::size_t i = 0; i < once.tracks.size(); ++i) {
      const Track& a = once.tracks[i];
      const Track& b = twice.tracks[i];
      REQUIRE(a.first_step == b.first_step);
      REQUIRE(a.positions.size() == b.positions.size());
      for (std::size_t k = 0; k < a.positions.size(); ++k) {
        CHECK(distance(a.positions[k], b.positions[k]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("frames: static pedestrian has zero velocity") {
  Track t{1, 0, 0.1, std::vector<Vec2>(12, Vec2{2, 3})};
  for (const auto& f : frames({t}, 0.1)) CHECK(f.states.at(1).v == Vec2{0, 0});
}

TEST_CASE("frames: constant velocity is recovered") {
  Track t{1, 4, 0.1, {}};
  for (int i = 0; i < 20; ++i) t.positions.push_back({0.1 * i, 0.0});
  const auto fr = frames({t}, 0.1);
  REQUIRE(fr.size() == 20);
  for (std::size_t i = 1; i + 1 < fr.size(); ++i) {
    CHECK(testing::near(fr[i].states.at(1).v, {1.0, 0.0}, 1e-9));
    CHECK(fr[i].states.at(1).v_pref == fr[i].states.at(1).v);
  }
}

TEST_CASE("frames: disjoint tracks never share a frame") {
  Track a{1, 0, 0.1, std::vector<Vec2>(5, Vec2{})};
  Track b{2, 10, 0.1, std::vector<Vec2>(5, Vec2{1, 1})};
  for (const auto& f : frames({a, b}, 0.1)) CHECK(f.states.size() == 1);
}

TEST_CASE("frames: sample count is preserved (property)") {
  testing::Gen g(9);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Track> tracks;
    std::size_t total = 0;
    for (int id = 0; id < g.integer(0, 6); ++id) {
      Track t{id, g.integer(0, 30), 0.1, {}};
      const int n = g.integer(1, 25);
      for (int i = 0; i < n; ++i) t.positions.push_back(g.point(5.0));
      total += t.positions.size();
      tracks.push_back(t);
    }
    std::size_t seen = 0;
    for (const auto& f : frames(tracks, 0.1)) seen += f.states.size();
    CHECK(seen == total);
  }
}
