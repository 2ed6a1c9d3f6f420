/*
 * datasets.cpp
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

#include "crowdsense/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "crowdsense/error.hpp"

namespace crowdsense {

namespace {

constexpr double kTimeTol = 1e-9;

template <typename T>
bool parse_field(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (start <= line.size()) {
    const std::size_t tab = line.find('\t', start);
    const std::size_t stop = tab == std::string_view::npos ? line.size() : tab;
    fields.push_back(line.substr(start, stop - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

void append_double(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

std::map<PedId, std::vector<Observation>> group_by_pedestrian(const RawTrajectoryFile& raw) {
  std::map<PedId, std::vector<Observation>> by_id;
  for (const auto& row : raw.rows) by_id[row.id].push_back(row);
  for (auto& [id, rows] : by_id) {
    std::sort(rows.begin(), rows.end(),
              [](const Observation& a, const Observation& b) { return a.frame < b.frame; });
  }
  return by_id;
}

void check_speeds(const RawTrajectoryFile& raw) {
  for (const auto& [id, rows] : group_by_pedestrian(raw)) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double dt = static_cast<double>(rows[i].frame - rows[i - 1].frame) / raw.fps;
      const double d = std::hypot(rows[i].x - rows[i - 1].x, rows[i].y - rows[i - 1].y);
      if (d / dt > kMaxPlausibleSpeed * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "pedestrian " << id << " moves " << d / dt << " m/s between frames "
            << rows[i - 1].frame << " and " << rows[i].frame;
        throw ImplausibleSpeed(msg.str());
      }
    }
  }
}

Track resample_one(PedId id, const std::vector<Observation>& rows, double fps, double dt) {
  Track track;
  track.id = id;
  track.dt = dt;
  const double t_first = static_cast<double>(rows.front().frame) / fps;
  const double t_last = static_cast<double>(rows.back().frame) / fps;
  const auto k_first = static_cast<std::int64_t>(std::ceil(t_first / dt - kTimeTol));
  const auto k_last = static_cast<std::int64_t>(std::floor(t_last / dt + kTimeTol));
  track.first_step = k_first;

  std::size_t seg = 0;
  for (std::int64_t k = k_first; k <= k_last; ++k) {
    const double t = static_cast<double>(k) * dt;
    while (seg + 2 < rows.size() && static_cast<double>(rows[seg + 1].frame) / fps < t - kTimeTol) {
      ++seg;
    }
    const Observation& a = rows[seg];
    const Observation& b = rows[std::min(seg + 1, rows.size() - 1)];
    const double ta = static_cast<double>(a.frame) / fps;
    const double tb = static_cast<double>(b.frame) / fps;
    if (std::abs(t - ta) <= kTimeTol) {
      track.positions.emplace_back(a.x, a.y);
    } else if (std::abs(t - tb) <= kTimeTol) {
      track.positions.emplace_back(b.x, b.y);
    } else {
      const double u = (t - ta) / (tb - ta);
      track.positions.emplace_back(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y));
    }
  }
  return track;
}

}  // namespace

RawTrajectoryFile parse_trajectories(std::istream& in, double fps) {
  if (!(fps > 0.0) || !std::isfinite(fps)) throw ConfigError("fps must be positive");
  RawTrajectoryFile raw;
  raw.fps = fps;
  std::set<std::pair<std::int64_t, PedId>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);
    Observation obs;
    if (fields.size() != 4 || !parse_field(fields[0], obs.frame) || !parse_field(fields[1], obs.id) ||
        !parse_field(fields[2], obs.x) || !parse_field(fields[3], obs.y) || !std::isfinite(obs.x) ||
        !std::isfinite(obs.y)) {
      throw ParseError("malformed row at line " + std::to_string(line_no) + ": '" + line + "'");
    }
    if (!seen.emplace(obs.frame, obs.id).second) {
      throw DuplicateObservation("frame " + std::to_string(obs.frame) + ", pedestrian " +
                                 std::to_string(obs.id) + " appears twice (line " +
                                 std::to_string(line_no) + ")");
    }
    raw.rows.push_back(obs);
  }
  if (raw.rows.empty()) throw EmptyFile("no observations");
  check_speeds(raw);
  return raw;
}

RawTrajectoryFile load_trajectories(const std::filesystem::path& path, double fps) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_trajectories(in, fps);
}

void write_trajectories(std::ostream& out, const RawTrajectoryFile& raw) {
  std::string buf = "# frame_id\tped_id\tx\ty\n";
  for (const auto& row : raw.rows) {
    buf += std::to_string(row.frame);
    buf += '\t';
    buf += std::to_string(row.id);
    buf += '\t';
    append_double(buf, row.x);
    buf += '\t';
    append_double(buf, row.y);
    buf += '\n';
  }
  out << buf;
}

void save_trajectories(const std::filesystem::path& path, const RawTrajectoryFile& raw) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_trajectories(out, raw);
}

ResampleResult resample(const RawTrajectoryFile& raw, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(raw.fps > 0.0)) throw ConfigError("fps must be positive");
  ResampleResult result;
  for (const auto& [id, rows] : group_by_pedestrian(raw)) {
    if (rows.size() < 2) {
      result.dropped.push_back(id);
      continue;
    }
    Track track = resample_one(id, rows, raw.fps, dt);
    if (track.positions.size() < 2) {
      result.dropped.push_back(id);
      continue;
    }
    result.tracks.push_back(std::move(track));
  }
  return result;
}

ResampleResult resample(const std::vector<Track>& tracks, double dt) {
  return resample(to_raw(tracks), dt);
}

RawTrajectoryFile to_raw(const std::vector<Track>& tracks) {
  RawTrajectoryFile raw;
  raw.fps = tracks.empty() ? 1.0 / kDefaultDt : 1.0 / tracks.front().dt;
  for (const auto& track : tracks) {
    for (std::size_t i = 0; i < track.positions.size(); ++i) {
      raw.rows.push_back({track.first_step + static_cast<std::int64_t>(i), track.id,
                          track.positions[i].x, track.positions[i].y});
    }
  }
  return raw;
}

Vec2 track_velocity(const Track& track, std::int64_t step) {
  const auto n = static_cast<std::int64_t>(track.positions.size());
  const std::int64_t i = step - track.first_step;
  if (n < 2) return {};
  if (i == 0) return (track.positions[1] - track.positions[0]) / track.dt;
  if (i == n - 1) return (track.positions[n - 1] - track.positions[n - 2]) / track.dt;
  return (track.positions[i + 1] - track.positions[i - 1]) / (2.0 * track.dt);
}

std::vector<CrowdFrame> frames(const std::vector<Track>& tracks, double dt) {
  std::map<std::int64_t, CrowdFrame> by_step;
  for (const auto& track : tracks) {
    for (std::int64_t k = track.first_step; k <= track.last_step(); ++k) {
      CrowdFrame& frame = by_step[k];
      frame.step = k;
      frame.time = static_cast<double>(k) * dt;
      const Vec2 v = track_velocity(track, k);
      frame.states[track.id] = PedestrianState{track.at_step(k), v, v};
    }
  }
  std::vector<CrowdFrame> out;
  out.reserve(by_step.size());
  for (auto& [k, frame] : by_step) out.push_back(std::move(frame));
  return out;
}

}  // namespace crowdsense
