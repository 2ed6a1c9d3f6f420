/*
 * rvo.cpp
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

#include "crowdsense/rvo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crowdsense/error.hpp"

namespace crowdsense {

namespace {

/// Vogel (sunflower) spiral over the unit disc; deterministic and evenly spread.
const std::vector<Vec2>& unit_disc_samples(int count) {
  thread_local std::vector<Vec2> pts;
  thread_local int cached = -1;
  if (cached != count) {
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    pts.clear();
    for (int k = 0; k < count; ++k) {
      const double r = std::sqrt((k + 0.5) / count);
      const double theta = k * golden_angle;
      pts.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
    cached = count;
  }
  return pts;
}

struct Agent {
  PedId id;
  PedestrianState state;
  MotionModel model;
  Vec2 goal;
};

std::vector<Agent> gather_agents(const CrowdFrame& frame, const std::map<PedId, MotionModel>& models,
                                 const std::map<PedId, Vec2>& goals) {
  std::vector<Agent> agents;
  agents.reserve(frame.states.size());
  for (const auto& [id, state] : frame.states) {
    const auto m = models.find(id);
    if (m == models.end()) throw MissingModel("no motion model for pedestrian " + std::to_string(id));
    const auto g = goals.find(id);
    if (g == goals.end()) throw MissingModel("no goal for pedestrian " + std::to_string(id));
    agents.push_back({id, state, m->second, g->second});
  }
  return agents;
}

PedestrianState advance_agent(std::size_t index, const std::vector<Agent>& agents,
                              const std::vector<Neighbor>& pool, std::span<const Obstacle> obstacles,
                              double dt, const RvoConfig& config) {
  const Agent& self = agents[index];
  PedestrianState state = self.state;
  state.v_pref = preferred_velocity(state, self.goal, self.model, config);

  std::vector<Neighbor> others;
  others.reserve(pool.size() - 1);
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (j != index) others.push_back(pool[j]);
  }
  const VelocityDecision decision =
      compute_new_velocity(self.id, state, self.model, others, obstacles, config);
  state.v = decision.velocity;
  state.p = state.p + decision.velocity * dt;
  return state;
}

template <bool kParallel>
CrowdFrame step_crowd_impl(const CrowdFrame& frame, const std::map<PedId, MotionModel>& models,
                           const std::map<PedId, Vec2>& goals, std::span<const Obstacle> obstacles,
                           double dt, const RvoConfig& config) {
  const std::vector<Agent> agents = gather_agents(frame, models, goals);
  std::vector<Neighbor> pool;
  pool.reserve(agents.size());
  for (const auto& a : agents) pool.push_back({a.id, a.state, a.model});

  std::vector<PedestrianState> next(agents.size());
  const auto n = static_cast<std::ptrdiff_t>(agents.size());
  if constexpr (kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      next[i] = advance_agent(static_cast<std::size_t>(i), agents, pool, obstacles, dt, config);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      next[i] = advance_agent(static_cast<std::size_t>(i), agents, pool, obstacles, dt, config);
    }
  }

  CrowdFrame out;
  out.step = frame.step + 1;
  out.time = frame.time + dt;
  for (std::size_t i = 0; i < agents.size(); ++i) out.states.emplace(agents[i].id, next[i]);
  return out;
}

}  // namespace

int MotionModel::neighbor_count() const {
  return std::max(1, static_cast<int>(std::lround(max_neighbors)));
}

Vec2 preferred_velocity(const PedestrianState& state, const Vec2& goal, const MotionModel& model,
                        const RvoConfig& config) {
  const Vec2 to_goal = goal - state.p;
  const double d = norm(to_goal);
  if (d <= config.arrival_tolerance) return {};
  return to_goal * (model.pref_speed / d);
}

double time_to_collision(const Vec2& rel_pos, const Vec2& rel_vel, double radius) {
  const double c = abs_sq(rel_pos) - radius * radius;
  const double b = dot(rel_pos, rel_vel);
  if (c < 0.0) return b > 0.0 ? 0.0 : kInfinity;
  const double a = abs_sq(rel_vel);
  if (a == 0.0 || b <= 0.0) return kInfinity;
  const double disc = b * b - a * c;
  if (disc <= 0.0) return kInfinity;
  const double t = (b - std::sqrt(disc)) / a;
  return t >= 0.0 ? t : kInfinity;
}

double time_to_collision(const Vec2& p, const Vec2& v, double radius, const Segment& segment) {
  const Vec2 closest = closest_point_on_segment(segment, p);
  const Vec2 offset = closest - p;
  if (abs_sq(offset) < radius * radius) return dot(offset, v) > 0.0 ? 0.0 : kInfinity;

  double t = std::min(time_to_collision(segment.a - p, v, radius),
                      time_to_collision(segment.b - p, v, radius));
  const Vec2 edge = segment.b - segment.a;
  const double len = norm(edge);
  if (len > 0.0) {
    const Vec2 u = edge / len;
    const Vec2 n{-u.y, u.x};
    const double s0 = dot(p - segment.a, n);
    const double vn = dot(v, n);
    if (s0 * vn < 0.0) {
      const double hit = (std::abs(s0) - radius) / std::abs(vn);
      const double along = dot(p + v * hit - segment.a, u);
      if (hit >= 0.0 && along >= 0.0 && along <= len) t = std::min(t, hit);
    }
  }
  return t;
}

std::vector<Neighbor> select_neighbors(PedId self_id, const PedestrianState& self,
                                       const MotionModel& model, std::span<const Neighbor> others) {
  std::vector<std::pair<double, const Neighbor*>> in_range;
  const double range_sq = model.neighbor_dist * model.neighbor_dist;
  for (const auto& other : others) {
    if (other.id == self_id) continue;
    const double d_sq = abs_sq(other.state.p - self.p);
    if (d_sq < range_sq) in_range.emplace_back(d_sq, &other);
  }
  const auto limit = std::min<std::size_t>(in_range.size(), model.neighbor_count());
  std::partial_sort(in_range.begin(), in_range.begin() + static_cast<std::ptrdiff_t>(limit),
                    in_range.end(), [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first < b.first;
                      return a.second->id < b.second->id;
                    });
  std::vector<Neighbor> selected;
  selected.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) selected.push_back(*in_range[i].second);
  return selected;
}

VelocityDecision compute_new_velocity(PedId self_id, const PedestrianState& self,
                                      const MotionModel& model, std::span<const Neighbor> neighbors,
                                      std::span<const Obstacle> obstacles, const RvoConfig& config) {
  const double max_speed = config.max_speed_factor * model.pref_speed;
  Vec2 v_pref = self.v_pref;
  if (norm(v_pref) > max_speed) v_pref = normalized(v_pref) * max_speed;

  const std::vector<Neighbor> selected = select_neighbors(self_id, self, model, neighbors);
  std::vector<const Segment*> near_obstacles;
  const double reach = model.planning_horizon * max_speed + model.radius;
  for (const auto& ob : obstacles) {
    if (distance_to_segment(ob.segment, self.p) < reach) near_obstacles.push_back(&ob.segment);
  }

  VelocityDecision decision;
  decision.neighbors_used = static_cast<int>(selected.size());
  decision.obstacle_in_range = !near_obstacles.empty();
  if (selected.empty() && near_obstacles.empty()) {
    decision.velocity = v_pref;
    return decision;
  }

  // Sample pattern is oriented along the preferred direction so the result
  // rotates with the scene.
  Vec2 frame_dir = normalized(v_pref);
  if (abs_sq(frame_dir) == 0.0) frame_dir = normalized(self.v);
  if (abs_sq(frame_dir) == 0.0) frame_dir = {1.0, 0.0};

  const double alpha = config.reciprocity;
  const Vec2 self_part = self.v * (1.0 - alpha);
  // Smallest time to collision of `cand`, or any value below `stop` as soon
  // as one is found.
  const auto time_to_collision_below = [&](const Vec2& cand, double stop) {
    double tc = kInfinity;
    for (const auto& nb : selected) {
      const Vec2 rel_vel = (cand - self_part) / alpha - nb.state.v;
      tc = std::min(tc, time_to_collision(nb.state.p - self.p, rel_vel,
                                          model.radius + nb.model.radius));
      if (tc < stop) return tc;
    }
    for (const Segment* seg : near_obstacles) {
      tc = std::min(tc, time_to_collision(self.p, cand, model.radius, *seg));
      if (tc < stop) return tc;
    }
    return tc;
  };

  const auto& disc = unit_disc_samples(config.samples);
  const auto candidate = [&](std::size_t k) {
    if (k == 0) return v_pref;
    if (k == 1) return Vec2{};
    return rotate_to(disc[k - 2] * max_speed, frame_dir);
  };
  const std::size_t count = disc.size() + 2;

  // Closest collision-free candidate to v_pref, first index on ties.
  bool have_feasible = false;
  double best_feasible = kInfinity;
  Vec2 best_feasible_v;
  for (std::size_t k = 0; k < count; ++k) {
    const Vec2 cand = candidate(k);
    const double dist = norm(cand - v_pref);
    if (have_feasible && dist >= best_feasible) continue;
    if (time_to_collision_below(cand, model.planning_horizon) >= model.planning_horizon) {
      have_feasible = true;
      best_feasible = dist;
      best_feasible_v = cand;
    }
  }

  // Otherwise the least-penetrating candidate: min dist + w / tc.
  double best_any = kInfinity;
  Vec2 best_any_v;
  if (!have_feasible) {
    bool have_any = false;
    for (std::size_t k = 0; k < count; ++k) {
      const Vec2 cand = candidate(k);
      const double dist = norm(cand - v_pref);
      // Penalty only grows as tc shrinks, so stop once it cannot win.
      const double stop = have_any ? config.penalty_weight / std::max(best_any - dist, 0.0) : 0.0;
      const double tc = time_to_collision_below(cand, stop);
      const double penalty = tc > 0.0 ? dist + config.penalty_weight / tc : kInfinity;
      if (!have_any || penalty < best_any) {
        have_any = true;
        best_any = penalty;
        best_any_v = cand;
      }
    }
  }

  decision.feasible = have_feasible;
  decision.velocity = have_feasible ? best_feasible_v : best_any_v;
  return decision;
}

CrowdFrame step_crowd(const CrowdFrame& frame, const std::map<PedId, MotionModel>& models,
                      const std::map<PedId, Vec2>& goals, std::span<const Obstacle> obstacles,
                      double dt, const RvoConfig& config) {
  return step_crowd_impl<true>(frame, models, goals, obstacles, dt, config);
}

CrowdFrame step_crowd_serial(const CrowdFrame& frame, const std::map<PedId, MotionModel>& models,
                             const std::map<PedId, Vec2>& goals,
                             std::span<const Obstacle> obstacles, double dt,
                             const RvoConfig& config) {
  return step_crowd_impl<false>(frame, models, goals, obstacles, dt, config);
}

std::vector<Obstacle> polygon_obstacle(const Vec2& center, double radius, int sides) {
  std::vector<Obstacle> out;
  const double r = radius / std::cos(std::numbers::pi / sides);
  for (int k = 0; k < sides; ++k) {
    const double a0 = 2.0 * std::numbers::pi * k / sides;
    const double a1 = 2.0 * std::numbers::pi * (k + 1) / sides;
    out.push_back({{center + Vec2{r * std::cos(a0), r * std::sin(a0)},
                    center + Vec2{r * std::cos(a1), r * std::sin(a1)}}});
  }
  return out;
}

}  // namespace crowdsense
