/*
 * rvo.hpp
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

#ifndef CROWDSENSE_RVO_HPP_
#define CROWDSENSE_RVO_HPP_

#include <map>
#include <span>
#include <vector>

#include "crowdsense/types.hpp"

namespace crowdsense {

/// Tunables of the sampling-based reciprocal velocity obstacle solver.
struct RvoConfig {
  int samples = 256;               ///< low-discrepancy candidates over the admissible disc
  double penalty_weight = 1.0;     ///< w in  |v - v_pref| + w / time_to_collision
  double reciprocity = 0.5;        ///< share of avoidance taken by each agent of a pair
  double max_speed_factor = 1.5;   ///< admissible speed = factor * pref_speed
  double arrival_tolerance = 0.1;  ///< preferred velocity is zero this close to the goal (m)
};

/// Another agent as seen by the agent being solved for.
struct Neighbor {
  PedId id = 0;
  PedestrianState state;
  MotionModel model;
};

/// Result of a single agent's velocity selection.
struct VelocityDecision {
  Vec2 velocity;
  /// False when every candidate collided within the planning horizon and the
  /// least-penetrating candidate was taken.
  bool feasible = true;
  /// Number of neighbors selected for avoidance.
  int neighbors_used = 0;
  /// Whether any obstacle could be reached within the planning horizon.
  bool obstacle_in_range = false;

  bool interacting() const { return neighbors_used > 0 || obstacle_in_range; }
};

/// Unit vector toward `goal` scaled by the model's preferred speed; zero
/// within the arrival tolerance.
Vec2 preferred_velocity(const PedestrianState& state, const Vec2& goal, const MotionModel& model,
                        const RvoConfig& config = {});

/// Earliest time at which two discs with combined radius `radius`, separated
/// by `rel_pos` (other minus self) and closing with `rel_vel` (self minus
/// other), touch. Overlapping discs report 0 when approaching and infinity
/// when separating.
double time_to_collision(const Vec2& rel_pos, const Vec2& rel_vel, double radius);

/// Earliest time at which a disc of `radius` at `p` moving with `v` touches `segment`.
double time_to_collision(const Vec2& p, const Vec2& v, double radius, const Segment& segment);

/// Nearest `model.neighbor_count()` agents within `model.neighbor_dist`,
/// by ascending distance, ties to lower id. `others` must not contain `self_id`.
std::vector<Neighbor> select_neighbors(PedId self_id, const PedestrianState& self,
                                       const MotionModel& model, std::span<const Neighbor> others);

/// Collision-avoiding velocity for one agent. `neighbors` is the candidate
/// pool; the nearest ones are selected according to `model`.
VelocityDecision compute_new_velocity(PedId self_id, const PedestrianState& self,
                                      const MotionModel& model, std::span<const Neighbor> neighbors,
                                      std::span<const Obstacle> obstacles,
                                      const RvoConfig& config = {});

/// Synchronous crowd update: all velocities from the old frame, then p += v * dt.
/// OpenMP-parallel over agents; bit-identical to step_crowd_serial.
/// Throws MissingModel when a pedestrian lacks a model or goal.
CrowdFrame step_crowd(const CrowdFrame& frame, const std::map<PedId, MotionModel>& models,
                      const std::map<PedId, Vec2>& goals, std::span<const Obstacle> obstacles,
                      double dt, const RvoConfig& config = {});

/// Single-threaded reference for step_crowd.
CrowdFrame step_crowd_serial(const CrowdFrame& frame, const std::map<PedId, MotionModel>& models,
                             const std::map<PedId, Vec2>& goals,
                             std::span<const Obstacle> obstacles, double dt,
                             const RvoConfig& config = {});

/// Closed polygon of `sides` segments circumscribing the disc (center, radius).
std::vector<Obstacle> polygon_obstacle(const Vec2& center, double radius, int sides = 16);

}  // namespace crowdsense

#endif  // CROWDSENSE_RVO_HPP_
