/*
 * navigation.cpp
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

#include "crowdsense/navigation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <queue>

#include "crowdsense/error.hpp"

namespace crowdsense {

namespace {

constexpr int kCornerSides = 16;

bool edge_clear(const Segment& e, std::span<const Obstacle> obstacles, double clearance) {
  for (const auto& o : obstacles) {
    if (segment_distance(e, o.segment) < clearance - 1e-9) return false;
  }
  return true;
}

double hard_limit(const PlannerPedestrian& ped, bool social, double robot_radius) {
  const double contact = robot_radius + ped.radius;
  return social ? std::max(ped.profile.personal / 100.0, contact) : contact;
}

}  // namespace

RobotState unicycle_step(const RobotState& s, const Control& c, double dt) {
  RobotState out;
  out.p = s.p + Vec2{std::cos(s.heading), std::sin(s.heading)} * (c.v * dt);
  out.heading = s.heading + c.omega * dt;
  out.v = c.v;
  out.omega = c.omega;
  return out;
}

std::vector<Vec2> plan_global(const Vec2& start, const Vec2& goal,
                              std::span<const Obstacle> obstacles, double clearance) {
  if (edge_clear({start, goal}, obstacles, clearance)) return {start, goal};

  std::vector<Vec2> nodes{start, goal};
  // Vertices of a polygon circumscribing the inflated endpoint, pushed out slightly.
  const double ring = (clearance + 1e-3) / std::cos(std::numbers::pi / kCornerSides);
  for (const auto& o : obstacles) {
    for (const Vec2& end : {o.segment.a, o.segment.b}) {
      for (int k = 0; k < kCornerSides; ++k) {
        const double a = 2.0 * std::numbers::pi * (k + 0.5) / kCornerSides;
        const Vec2 v = end + Vec2{std::cos(a), std::sin(a)} * ring;
        bool free = true;
        for (const auto& q : obstacles) {
          if (distance_to_segment(q.segment, v) < clearance) {
            free = false;
            break;
          }
        }
        if (free) nodes.push_back(v);
      }
    }
  }

  const std::size_t n = nodes.size();
  std::vector<double> dist(n, kInfinity);
  std::vector<std::size_t> parent(n, n);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[0] = 0.0;
  open.push({0.0, 0});
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == 1) break;
    for (std::size_t w = 0; w < n; ++w) {
      if (done[w] || w == u) continue;
      const double nd = d + distance(nodes[u], nodes[w]);
      if (nd >= dist[w]) continue;
      if (!edge_clear({nodes[u], nodes[w]}, obstacles, clearance)) continue;
      dist[w] = nd;
      parent[w] = u;
      open.push({nd, w});
    }
  }
  if (!done[1]) throw NoPath("goal is not reachable with the requested clearance");

  std::vector<Vec2> path;
  for (std::size_t v = 1; v != n; v = parent[v]) path.push_back(nodes[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

GvoDecision gvo_step(const RobotState& robot, std::span<const PlannerPedestrian> pedestrians,
                     const Vec2& waypoint, double dt, bool social,
                     std::span<const Obstacle> obstacles, const RobotLimits& limits,
                     const GvoConfig& config) {
  if (config.v_samples < 2 || config.omega_samples < 2) {
    throw ConfigError("control grid needs at least two samples per axis");
  }
  const int steps = std::max(1, static_cast<int>(std::lround(config.horizon / dt)));
  const int nv = config.v_samples, nw = config.omega_samples;
  const int count = nv * nw;

  struct Score {
    double cost = kInfinity;
    double margin = -kInfinity;
    bool feasible = false;
  };
  std::vector<Score> scores(static_cast<std::size_t>(count));

#pragma omp parallel for schedule(static)
  for (int idx = 0; idx < count; ++idx) {
    const Control c{limits.v_max * (idx / nw) / (nv - 1),
                    -limits.omega_max + 2.0 * limits.omega_max * (idx % nw) / (nw - 1)};
    RobotState s = robot;
    double progress = kInfinity, penalty = 0.0, margin = kInfinity;
    bool feasible = true;
    for (int k = 1; k <= steps; ++k) {
      s = unicycle_step(s, c, dt);
      progress = std::min(progress, distance(s.p, waypoint) +
                                        config.time_weight * limits.v_max * k * dt);
      for (const auto& o : obstacles) {
        const double d = distance_to_segment(o.segment, s.p) - limits.radius;
        margin = std::min(margin, d);
        if (d < 0.0) feasible = false;
      }
      for (const auto& ped : pedestrians) {
        if (static_cast<std::size_t>(k) >= ped.positions.size()) continue;
        const double d = distance(s.p, ped.positions[static_cast<std::size_t>(k)]);
        const double lim = hard_limit(ped, social, limits.radius);
        margin = std::min(margin, d - lim);
        if (d < lim) feasible = false;
        if (social) {
          const double ds = ped.profile.social / 100.0, dp = ped.profile.personal / 100.0;
          if (d < ds) {
            const double x = (ds - d) / (ds - dp);
            penalty += config.social_weight / steps * x * x;
          }
        }
      }
    }
    scores[static_cast<std::size_t>(idx)] = {progress + penalty, margin, feasible};
  }

  int best = -1;
  bool emergency = true;
  for (int idx = 0; idx < count; ++idx) {
    const Score& sc = scores[static_cast<std::size_t>(idx)];
    if (sc.feasible && (best < 0 || sc.cost < scores[static_cast<std::size_t>(best)].cost)) {
      best = idx;
      emergency = false;
    }
  }
  if (emergency) {
    best = 0;
    for (int idx = 1; idx < count; ++idx) {
      if (scores[static_cast<std::size_t>(idx)].margin > scores[static_cast<std::size_t>(best)].margin) best = idx;
    }
  }
  const Control c{limits.v_max * (best / nw) / (nv - 1),
                  -limits.omega_max + 2.0 * limits.omega_max * (best % nw) / (nw - 1)};
  return {c, unicycle_step(robot, c, dt), emergency, scores[static_cast<std::size_t>(best)].cost};
}

IntrusionCount count_intrusions(std::span<const PathSample> path, std::span<const Track> pedestrians,
                                const std::map<PedId, ProxemicProfile>& profiles) {
  IntrusionCount out;
  for (const auto& t : pedestrians) {
    const auto it = profiles.find(t.id);
    if (it == profiles.end()) continue;
    const double dp = it->second.personal / 100.0, ds = it->second.social / 100.0;
    bool in_personal = false, in_social = false;
    for (const auto& s : path) {
      const bool present = t.covers(s.step);
      const double d = present ? distance(s.state.p, t.at_step(s.step)) : kInfinity;
      const bool p_now = d < dp, s_now = d < ds;
      if (p_now && !in_personal) ++out.personal;
      if (s_now && !in_social) ++out.social;
      in_personal = p_now;
      in_social = s_now;
    }
  }
  return out;
}

NavResult run_navigation(const NavScenario& sc) {
  if (!(sc.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(sc.timeout > 0.0)) throw ConfigError("timeout must be positive");
  if (!(sc.robot.v_max > 0.0) || !(sc.robot.omega_max > 0.0) || !(sc.robot.radius > 0.0)) {
    throw ConfigError("robot limits must be positive");
  }
  if (distance(sc.start, sc.goal) < 1e-9) throw ConfigError("robot start equals goal");
  for (const auto& t : sc.pedestrians) {
    if (std::abs(t.dt - sc.dt) > 1e-12) throw ConfigError("pedestrian track dt differs from scenario dt");
  }

  std::map<PedId, ProxemicProfile> profiles;
  std::map<PedId, MotionModel> models;
  for (const auto& t : sc.pedestrians) {
    const auto it = sc.models.find(t.id);
    models[t.id] = it != sc.models.end() ? it->second : MotionModel{};
    profiles[t.id] = proxemic_profile(models[t.id]);
  }

  const std::vector<Vec2> waypoints = plan_global(sc.start, sc.goal, sc.obstacles, sc.robot.radius);
  std::size_t wp = 1;
  RobotState robot;
  robot.p = sc.start;
  const Vec2 first_leg = waypoints[1] - sc.start;
  robot.heading = std::atan2(first_leg.y, first_leg.x);

  const int horizon = std::max(1, static_cast<int>(std::lround(sc.gvo.horizon / sc.dt)));
  const auto max_steps = static_cast<std::int64_t>(std::llround(sc.timeout / sc.dt));
  const std::int64_t refresh =
      std::max<std::int64_t>(1, std::llround(sc.prediction.resample_interval / sc.dt));

  PredictionConfig pc = sc.prediction;
  pc.dt = sc.dt;
  pc.horizon = std::max(pc.horizon, refresh * sc.dt + sc.gvo.horizon);
  Predictions rolled;

  NavResult result;
  double step_ms = 0.0;
  int planned = 0;
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t now = sc.start_step + k;
    PathSample sample{static_cast<double>(k) * sc.dt, now, robot, false};
    if (distance(robot.p, sc.goal) <= sc.goal_tolerance) {
      result.path.push_back(sample);
      result.reached_goal = true;
      result.travel_time = sample.time;
      break;
    }
    if (k == max_steps) {
      result.path.push_back(sample);
      result.travel_time = sample.time;
      break;
    }
    while (wp + 1 < waypoints.size() && distance(robot.p, waypoints[wp]) <= sc.waypoint_tolerance) ++wp;

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<PlannerPedestrian> peds;
    if (sc.source == PredictionSource::kRollout && k % refresh == 0) {
      CrowdFrame frame;
      frame.step = now;
      frame.time = static_cast<double>(now) * sc.dt;
      std::map<PedId, ParamBounds> bounds;
      std::map<PedId, Vec2> goals;
      for (const auto& t : sc.pedestrians) {
        if (!t.covers(now)) continue;
        const std::int64_t back = std::max(t.first_step, now - 10);
        const Vec2 v = now > back ? (t.at_step(now) - t.at_step(back)) / ((now - back) * sc.dt) : Vec2{};
        PedestrianState st{t.at_step(now), v, v};
        frame.states[t.id] = st;
        bounds[t.id] = compute_bounds(traits_from_params(models[t.id]).b, pc.y);
        goals[t.id] = norm(v) > 1e-9 ? st.p + normalized(v) * pc.goal_extension : st.p;
      }
      rolled = predict(frame, models, bounds, goals, sc.obstacles, pc);
    }
    for (const auto& t : sc.pedestrians) {
      if (!t.covers(now)) continue;
      PlannerPedestrian p{t.id, {}, profiles[t.id], models[t.id].radius};
      if (sc.source == PredictionSource::kReplay) {
        for (std::int64_t j = 0; j <= horizon && t.covers(now + j); ++j) p.positions.push_back(t.at_step(now + j));
      } else if (const auto r = rolled.find(t.id); r != rolled.end()) {
        const std::int64_t offset = now - r->second.start_step;
        for (std::int64_t j = 0; j <= horizon; ++j) {
          const auto idx = static_cast<std::size_t>(std::min<std::int64_t>(
              offset + j, static_cast<std::int64_t>(r->second.positions.size()) - 1));
          p.positions.push_back(r->second.positions[idx]);
        }
      } else {
        p.positions.assign(static_cast<std::size_t>(horizon + 1), t.at_step(now));
      }
      peds.push_back(std::move(p));
    }
    const GvoDecision d = gvo_step(robot, peds, waypoints[wp], sc.dt, sc.social, sc.obstacles,
                                   sc.robot, sc.gvo);
    step_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    ++planned;

    sample.emergency = d.emergency;
    sample.state.v = d.control.v;
    sample.state.omega = d.control.omega;
    if (d.emergency) ++result.emergency_steps;
    result.path.push_back(sample);
    robot = d.next;
  }

  const IntrusionCount ic = count_intrusions(result.path, sc.pedestrians, profiles);
  result.personal_intrusions = ic.personal;
  result.social_intrusions = ic.social;
  for (const auto& s : result.path) {
    for (const auto& t : sc.pedestrians) {
      if (!t.covers(s.step)) continue;
      result.min_clearance = std::min(result.min_clearance, distance(s.state.p, t.at_step(s.step)) -
                                                                sc.robot.radius - models[t.id].radius);
    }
  }
  result.mean_step_ms = planned > 0 ? step_ms / planned : 0.0;
  return result;
}

}  // namespace crowdsense
