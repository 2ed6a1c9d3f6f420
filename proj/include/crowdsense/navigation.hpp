/*
 * navigation.hpp
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

#ifndef CROWDSENSE_NAVIGATION_HPP_
#define CROWDSENSE_NAVIGATION_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "crowdsense/datasets.hpp"
#include "crowdsense/prediction.hpp"
#include "crowdsense/proxemics.hpp"

namespace crowdsense {

struct RobotLimits {
  double v_max = 1.5;      ///< m/s
  double omega_max = 1.5;  ///< rad/s
  double radius = 0.3;     ///< m
};

/// Differential-drive robot pose and last applied control.
struct RobotState {
  Vec2 p;
  double heading = 0.0;  ///< rad
  double v = 0.0;        ///< m/s
  double omega = 0.0;    ///< rad/s
};

struct Control {
  double v = 0.0;
  double omega = 0.0;
};

/// p += v (cos h, sin h) dt, then h += omega dt.
RobotState unicycle_step(const RobotState& s, const Control& c, double dt);

/// Shortest path on a visibility graph whose nodes surround every obstacle
/// endpoint at `clearance`. Returns [start, ..., goal]. Throws NoPath.
std::vector<Vec2> plan_global(const Vec2& start, const Vec2& goal,
                              std::span<const Obstacle> obstacles, double clearance);

/// A pedestrian as seen by the local planner.
struct PlannerPedestrian {
  PedId id = 0;
  std::vector<Vec2> positions;  ///< predicted positions at now_step + k
  ProxemicProfile profile;      ///< cm
  double radius = 0.0;          ///< m
};

struct GvoConfig {
  int v_samples = 21;
  int omega_samples = 21;
  double horizon = 2.0;  ///< s
  /// Goal-progress cost of a full-horizon stay at the edge of personal space (m).
  double social_weight = 2.0;
  /// Each second of delay costs this fraction of v_max in goal progress.
  double time_weight = 0.1;
};

struct GvoDecision {
  Control control;
  RobotState next;
  /// No control satisfied the hard constraints; the one with the largest
  /// predicted clearance was taken.
  bool emergency = false;
  double cost = 0.0;
};

/// Samples a v x omega control grid, simulates each control over the
/// horizon against `pedestrians`, drops controls that come closer than the
/// hard limit (personal distance in social mode, combined radii otherwise) or
/// touch an obstacle, and minimizes goal progress plus, in social mode, the
/// social-space penalty.
GvoDecision gvo_step(const RobotState& robot, std::span<const PlannerPedestrian> pedestrians,
                     const Vec2& waypoint, double dt, bool social,
                     std::span<const Obstacle> obstacles = {}, const RobotLimits& limits = {},
                     const GvoConfig& config = {});

enum class PredictionSource { kReplay, kRollout };

struct NavScenario {
  /// Replayed pedestrian tracks on the dt grid; pedestrians ignore the robot.
  std::vector<Track> pedestrians;
  /// Motion models of the pedestrians (profiles and radii derive from them).
  std::map<PedId, MotionModel> models;
  Vec2 start;
  Vec2 goal;
  std::vector<Obstacle> obstacles;
  RobotLimits robot;
  bool social = true;
  std::uint64_t seed = 0;
  double timeout = 120.0;  ///< s
  double dt = kDefaultDt;
  std::int64_t start_step = 0;
  PredictionSource source = PredictionSource::kReplay;
  PredictionConfig prediction;
  GvoConfig gvo;
  double waypoint_tolerance = 0.5;  ///< m
  double goal_tolerance = 0.3;      ///< m
};

struct PathSample {
  double time = 0.0;
  std::int64_t step = 0;
  RobotState state;
  bool emergency = false;
};

struct NavResult {
  std::vector<PathSample> path;
  double travel_time = 0.0;
  int personal_intrusions = 0;
  int social_intrusions = 0;
  /// Smallest robot-to-pedestrian surface distance along the path (m).
  double min_clearance = kInfinity;
  bool reached_goal = false;
  int emergency_steps = 0;
  double mean_step_ms = 0.0;
};

struct IntrusionCount {
  int personal = 0;
  int social = 0;
};

/// Maximal runs of consecutive path samples inside a pedestrian's personal
/// or social distance, counted once per run and pedestrian.
IntrusionCount count_intrusions(std::span<const PathSample> path, std::span<const Track> pedestrians,
                                const std::map<PedId, ProxemicProfile>& profiles);

/// Closed-loop run at scenario.dt until the goal or the timeout.
/// Throws ConfigError for an invalid scenario, NoPath.
NavResult run_navigation(const NavScenario& scenario);

}  // namespace crowdsense

#endif  // CROWDSENSE_NAVIGATION_HPP_
