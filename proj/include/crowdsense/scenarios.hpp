/*
 * scenarios.hpp
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

#ifndef CROWDSENSE_SCENARIOS_HPP_
#define CROWDSENSE_SCENARIOS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "crowdsense/datasets.hpp"
#include "crowdsense/rvo.hpp"

namespace crowdsense {

/// One agent of a synthetic crowd.
struct SimAgent {
  PedId id = 0;
  Vec2 start;
  Vec2 goal;
  MotionModel model;
  std::int64_t spawn_step = 0;
};

struct SimulationOptions {
  double dt = kDefaultDt;
  std::int64_t steps = 100;
  /// Variance of Gaussian noise added to every position after each step (m^2).
  double process_noise_var = 0.0;
  /// Standard deviation of noise added to the recorded positions only (m).
  double observation_noise_std = 0.0;
  std::uint64_t seed = 0;
  /// Agents leave the scene (and their track ends) within this distance of the goal.
  double exit_radius = 0.3;
  RvoConfig rvo;
};

struct SimulationResult {
  std::vector<Track> truth;
  std::vector<Track> observed;
  std::vector<SimAgent> agents;
};

/// Rolls the crowd forward with step_crowd and records every agent's track.
SimulationResult simulate_crowd(const std::vector<SimAgent>& agents,
                                std::span<const Obstacle> obstacles,
                                const SimulationOptions& options);

/// `count` agents evenly spaced on a circle, each heading to the antipode.
std::vector<SimAgent> circle_scenario(int count, double circle_radius, const MotionModel& model);

/// Two perpendicular streams crossing a square of side `extent` centered at
/// the origin. Agents spawn over time with jittered lanes and preferred speeds.
std::vector<SimAgent> crossing_scenario(int count, double extent, std::uint64_t seed,
                                        const MotionModel& base, double spawn_window_s = 0.0,
                                        double dt = kDefaultDt);

/// Pedestrians timed to cross a robot's straight start-goal line.
struct TimedCrossingOptions {
  /// Walking direction of odd-indexed pedestrians relative to the robot heading;
  /// even-indexed ones walk the opposite way.
  double angle_deg = 90.0;
  Vec2 robot_start{-8.0, 0.0};
  Vec2 robot_goal{8.0, 0.0};
  double robot_speed = 1.5;  ///< m/s
  /// Simulated time before the robot departs (s).
  double lead = 6.0;
  /// Distance walked before and after the crossing point (m).
  double approach = 6.0;
  /// Crossing times are shifted by -jitter, 0 or +jitter (s) in turn.
  double jitter = 0.5;
  /// Crossing points keep this distance from both ends of the robot line (m).
  double end_margin = 2.0;
};

/// Motion models cycled through by timed_crossing_scenario.
std::span<const MotionModel> timed_crossing_models();

/// `count` pedestrians spread evenly along the robot line, each spawned so that
/// it reaches its crossing point when a robot leaving at `lead` and driving
/// straight at `robot_speed` would.
std::vector<SimAgent> timed_crossing_scenario(int count, const TimedCrossingOptions& options = {},
                                              double dt = kDefaultDt);

}  // namespace crowdsense

#endif  // CROWDSENSE_SCENARIOS_HPP_
