/*
 * datasets.hpp
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

#ifndef CROWDSENSE_DATASETS_HPP_
#define CROWDSENSE_DATASETS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "crowdsense/types.hpp"

namespace crowdsense {

/// Canonical internal timestep (s).
inline constexpr double kDefaultDt = 0.1;
/// Upper bound on plausible pedestrian speed (m/s).
inline constexpr double kMaxPlausibleSpeed = 5.0;

struct Observation {
  std::int64_t frame = 0;
  PedId id = 0;
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Observation&) const = default;
};

/// Frame-indexed observations as read from a trajectory TSV, with the
/// out-of-band frame rate.
struct RawTrajectoryFile {
  std::vector<Observation> rows;
  double fps = 0.0;
};

/// One pedestrian's positions on the uniform grid t = step * dt.
struct Track {
  PedId id = 0;
  std::int64_t first_step = 0;
  double dt = kDefaultDt;
  std::vector<Vec2> positions;

  double t0() const { return static_cast<double>(first_step) * dt; }
  std::int64_t last_step() const {
    return first_step + static_cast<std::int64_t>(positions.size()) - 1;
  }
  bool covers(std::int64_t step) const { return step >= first_step && step <= last_step(); }
  const Vec2& at_step(std::int64_t step) const {
    return positions[static_cast<std::size_t>(step - first_step)];
  }
};

struct ResampleResult {
  std::vector<Track> tracks;
  /// Pedestrians with fewer than two usable observations; dropped, not fatal.
  std::vector<PedId> dropped;
};

/// Parses the tab-separated `frame_id ped_id x y` format. Lines starting
/// with `#` and blank lines are skipped.
/// Throws ParseError, DuplicateObservation, EmptyFile, ImplausibleSpeed, ConfigError (fps <= 0).
RawTrajectoryFile parse_trajectories(std::istream& in, double fps);
RawTrajectoryFile load_trajectories(const std::filesystem::path& path, double fps);

/// Writes rows in the same TSV format; doubles use shortest round-trip form.
void write_trajectories(std::ostream& out, const RawTrajectoryFile& raw);
void save_trajectories(const std::filesystem::path& path, const RawTrajectoryFile& raw);

/// Linear interpolation of each pedestrian onto the global grid k * dt,
/// restricted to the pedestrian's observed interval.
ResampleResult resample(const RawTrajectoryFile& raw, double dt);
ResampleResult resample(const std::vector<Track>& tracks, double dt);

/// Inverse view of a set of grid tracks: frame = step, fps = 1 / dt.
RawTrajectoryFile to_raw(const std::vector<Track>& tracks);

/// Crowd snapshots on the common grid. Velocities are central differences
/// (one-sided at track ends); preferred velocity starts equal to velocity.
std::vector<CrowdFrame> frames(const std::vector<Track>& tracks, double dt);

/// Finite-difference velocity of `track` at `step`, using the same stencil as frames().
Vec2 track_velocity(const Track& track, std::int64_t step);

}  // namespace crowdsense

#endif  // CROWDSENSE_DATASETS_HPP_
