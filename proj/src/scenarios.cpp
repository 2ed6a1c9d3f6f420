/*
 * scenarios.cpp
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

#include "crowdsense/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "crowdsense/error.hpp"

namespace crowdsense {

namespace {

bool spawn_blocked(const SimAgent& agent, const CrowdFrame& frame,
                   const std::map<PedId, MotionModel>& models) {
  for (const auto& [id, state] : frame.states) {
    const double clearance = agent.model.radius + models.at(id).radius + 0.1;
    if (distance(state.p, agent.start) < clearance) return true;
  }
  return false;
}

}  // namespace

SimulationResult simulate_crowd(const std::vector<SimAgent>& agents,
                                std::span<const Obstacle> obstacles,
                                const SimulationOptions& options) {
  if (!(options.dt > 0.0)) throw ConfigError("dt must be positive");
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double process_std = std::sqrt(std::max(0.0, options.process_noise_var));

  std::map<PedId, MotionModel> models;
  std::map<PedId, Vec2> goals;
  std::map<PedId, Track> truth;
  std::vector<const SimAgent*> pending;
  for (const auto& a : agents) {
    models[a.id] = a.model;
    goals[a.id] = a.goal;
    pending.push_back(&a);
  }

  CrowdFrame frame;
  frame.step = 0;
  frame.time = 0.0;
  const auto record = [&](const CrowdFrame& f) {
    for (const auto& [id, state] : f.states) {
      Track& t = truth[id];
      if (t.positions.empty()) {
        t.id = id;
        t.dt = options.dt;
        t.first_step = f.step;
      }
      t.positions.push_back(state.p);
    }
  };

  for (std::int64_t step = 0; step <= options.steps; ++step) {
    for (auto it = pending.begin(); it != pending.end();) {
      const SimAgent& a = **it;
      if (a.spawn_step <= step && !spawn_blocked(a, frame, models)) {
        PedestrianState s;
        s.p = a.start;
        s.v_pref = preferred_velocity(s, a.goal, a.model, options.rvo);
        s.v = s.v_pref;
        frame.states[a.id] = s;
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
    record(frame);
    if (step == options.steps) break;

    // Arrived agents leave after their final sample is recorded.
    for (auto it = frame.states.begin(); it != frame.states.end();) {
      if (distance(it->second.p, goals[it->first]) <= options.exit_radius) {
        it = frame.states.erase(it);
      } else {
        ++it;
      }
    }
    frame = step_crowd(frame, models, goals, obstacles, options.dt, options.rvo);
    if (process_std > 0.0) {
      for (auto& [id, state] : frame.states) {
        state.p += Vec2{normal(rng), normal(rng)} * process_std;
      }
    }
  }

  SimulationResult out;
  out.agents = agents;
  for (auto& [id, t] : truth) {
    if (t.positions.size() < 2) continue;
    Track obs = t;
    if (options.observation_noise_std > 0.0) {
      for (auto& p : obs.positions) {
        p += Vec2{normal(rng), normal(rng)} * options.observation_noise_std;
      }
    }
    out.truth.push_back(std::move(t));
    out.observed.push_back(std::move(obs));
  }
  return out;
}

std::vector<SimAgent> circle_scenario(int count, double circle_radius, const MotionModel& model) {
  std::vector<SimAgent> agents;
  for (int i = 0; i < count; ++i) {
    const double a = 2.0 * std::numbers::pi * i / count;
    const Vec2 p{circle_radius * std::cos(a), circle_radius * std::sin(a)};
    agents.push_back({i, p, -p, model, 0});
  }
  return agents;
}

std::vector<SimAgent> crossing_scenario(int count, double extent, std::uint64_t seed,
                                        const MotionModel& base, double spawn_window_s,
                                        double dt) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lane(-extent / 4.0, extent / 4.0);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::uniform_real_distribution<double> spawn(0.0, spawn_window_s);
  const double half = extent / 2.0;
  std::vector<SimAgent> agents;
  for (int i = 0; i < count; ++i) {
    SimAgent a;
    a.id = i;
    a.model = base;
    a.model.pref_speed = base.pref_speed * (1.0 + jitter(rng));
    a.model.radius = base.radius * (1.0 + jitter(rng));
    const double offset = lane(rng);
    if (i % 2 == 0) {
      a.start = {-half, offset};
      a.goal = {half, offset};
    } else {
      a.start = {offset, -half};
      a.goal = {offset, half};
    }
    a.spawn_step = spawn_window_s > 0.0 ? static_cast<std::int64_t>(spawn(rng) / dt) : 0;
    agents.push_back(a);
  }
  return agents;
}

std::span<const MotionModel> timed_crossing_models() {
  static const std::array<MotionModel, 4> models{{{15.0, 10.0, 30.0, 0.3, 1.3},
                                                  {25.0, 15.0, 40.0, 0.35, 1.2},
                                                  {8.0, 5.0, 20.0, 0.3, 1.4},
                                                  {20.0, 8.0, 35.0, 0.25, 1.1}}};
  return models;
}

std::vector<SimAgent> timed_crossing_scenario(int count, const TimedCrossingOptions& o, double dt) {
  if (count < 2) throw ConfigError("timed crossing needs at least two pedestrians");
  if (!(dt > 0.0) || !(o.robot_speed > 0.0) || !(o.approach > 0.0)) {
    throw ConfigError("timed crossing needs positive dt, robot speed and approach");
  }
  const Vec2 line = o.robot_goal - o.robot_start;
  const double length = norm(line);
  if (!(length > 2.0 * o.end_margin)) throw ConfigError("robot line shorter than its end margins");
  const Vec2 heading = line / length;
  const auto models = timed_crossing_models();
  std::vector<SimAgent> agents;
  for (int i = 0; i < count; ++i) {
    const double along = o.end_margin + (length - 2.0 * o.end_margin) * i / (count - 1);
    const double deg = i % 2 != 0 ? o.angle_deg : o.angle_deg + 180.0;
    const double rad = deg * std::numbers::pi / 180.0;
    const Vec2 dir = rotate_to({std::cos(rad), std::sin(rad)}, heading);
    const Vec2 cross = o.robot_start + heading * along;
    SimAgent a;
    a.id = i;
    a.model = models[static_cast<std::size_t>(i) % models.size()];
    a.start = cross - dir * o.approach;
    a.goal = cross + dir * o.approach;
    const double t_cross = o.lead + along / o.robot_speed + o.jitter * (i % 3 - 1);
    a.spawn_step = std::max<std::int64_t>(
        0, std::llround((t_cross - o.approach / a.model.pref_speed) / dt));
    agents.push_back(a);
  }
  return agents;
}

}  // namespace crowdsense
