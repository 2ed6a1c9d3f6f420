/*
 * types.hpp
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

#ifndef CROWDSENSE_TYPES_HPP_
#define CROWDSENSE_TYPES_HPP_

#include <array>
#include <cstdint>
#include <map>

#include "crowdsense/geometry.hpp"

namespace crowdsense {

using PedId = std::int64_t;

/// Kinematic state of one pedestrian at one instant.
struct PedestrianState {
  Vec2 p;       ///< position (m)
  Vec2 v;       ///< current velocity (m/s)
  Vec2 v_pref;  ///< preferred velocity (m/s)

  bool operator==(const PedestrianState&) const = default;
};

/// The five per-pedestrian parameters of the reciprocal velocity obstacle model.
/// max_neighbors is real-valued so it can be estimated; it is rounded at use.
struct MotionModel {
  double neighbor_dist = 15.0;     ///< m
  double max_neighbors = 10.0;     ///< count
  double planning_horizon = 30.0;  ///< s
  double radius = 0.8;             ///< m
  double pref_speed = 1.4;         ///< m/s

  static constexpr std::size_t kSize = 5;

  std::array<double, kSize> as_array() const {
    return {neighbor_dist, max_neighbors, planning_horizon, radius, pref_speed};
  }
  static MotionModel from_array(const std::array<double, kSize>& a) {
    return {a[0], a[1], a[2], a[3], a[4]};
  }
  /// max_neighbors rounded to the nearest integer, at least 1.
  int neighbor_count() const;

  bool operator==(const MotionModel&) const = default;
};

/// A static obstacle edge with zero thickness.
struct Obstacle {
  Segment segment;
};

/// Positions, velocities and preferred velocities of every pedestrian present at one time.
struct CrowdFrame {
  double time = 0.0;
  std::int64_t step = 0;  ///< index on the uniform grid, time = step * dt
  std::map<PedId, PedestrianState> states;
};

}  // namespace crowdsense

#endif  // CROWDSENSE_TYPES_HPP_
