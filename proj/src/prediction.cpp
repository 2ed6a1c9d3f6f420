/*
 * prediction.cpp
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

#include "crowdsense/prediction.hpp"

#include <algorithm>
#include <cmath>

#include "crowdsense/error.hpp"

namespace crowdsense {

namespace {

std::int64_t to_steps(double seconds, double dt) {
  return static_cast<std::int64_t>(std::llround(seconds / dt));
}

Vec2 heading_goal(const Vec2& p, const Vec2& heading, double extension) {
  return norm(heading) > 1e-9 ? p + normalized(heading) * extension : p;
}

/// Track restricted to [from, to] on its own grid.
Track slice(const Track& t, std::int64_t from, std::int64_t to) {
  Track out;
  out.id = t.id;
  out.dt = t.dt;
  out.first_step = std::max(from, t.first_step);
  const std::int64_t last = std::min(to, t.last_step());
  for (std::int64_t s = out.first_step; s <= last; ++s) out.positions.push_back(t.at_step(s));
  return out;
}

/// Mean velocity over the last `steps` samples (fewer if the history is shorter).
Vec2 displacement_velocity(const Track& history, std::int64_t steps) {
  const auto n = history.positions.size();
  if (n < 2) return {};
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max<std::int64_t>(1, steps)), n - 1);
  return (history.positions[n - 1] - history.positions[n - 1 - k]) /
         (static_cast<double>(k) * history.dt);
}

PredictedTrack linear_track(PedId id, std::int64_t step, double dt, const Vec2& p, const Vec2& v,
                            std::int64_t steps) {
  PredictedTrack out{id, step, static_cast<double>(step) * dt, dt, {}};
  out.positions.reserve(static_cast<std::size_t>(steps + 1));
  for (std::int64_t k = 0; k <= steps; ++k) out.positions.push_back(p + v * (static_cast<double>(k) * dt));
  return out;
}

/// Constant-velocity Kalman filter over the whole history; returns the
/// filtered position and velocity at its last sample.
std::pair<Vec2, Vec2> kalman_cv(const Track& history, const Eigen::Matrix2d& r, double accel_std) {
  const double dt = history.dt;
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  f(0, 2) = f(1, 3) = dt;
  Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
  const double a2 = accel_std * accel_std;
  for (int i = 0; i < 2; ++i) {
    q(i, i) = a2 * std::pow(dt, 4) / 4.0;
    q(i, i + 2) = q(i + 2, i) = a2 * std::pow(dt, 3) / 2.0;
    q(i + 2, i + 2) = a2 * dt * dt;
  }
  Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
  h(0, 0) = h(1, 1) = 1.0;

  Eigen::Vector4d x(history.positions[0].x, history.positions[0].y, 0.0, 0.0);
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  p.topLeftCorner<2, 2>() = r;
  p.bottomRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
  for (std::size_t k = 1; k < history.positions.size(); ++k) {
    x = f * x;
    p = f * p * f.transpose() + q;
    const Eigen::Vector2d z(history.positions[k].x, history.positions[k].y);
    const Eigen::Matrix2d s = h * p * h.transpose() + r;
    const Eigen::Matrix<double, 4, 2> gain = p * h.transpose() * s.inverse();
    x += gain * (z - h * x);
    p = (Eigen::Matrix4d::Identity() - gain * h) * p;
  }
  return {{x(0), x(1)}, {x(2), x(3)}};
}

void validate(const PredictionConfig& c) {
  if (!(c.dt > 0.0)) throw ConfigError("prediction dt must be positive");
  if (!(c.horizon >= 0.0)) throw ConfigError("prediction horizon must be non-negative");
  if (!(c.resample_interval > 0.0)) throw ConfigError("resample interval must be positive");
  if (std::isnan(c.y) || c.y < 0.0) throw ConfigError("bound width y must be non-negative");
}

}  // namespace

Predictions predict(const CrowdFrame& current, const std::map<PedId, MotionModel>& models,
                    const std::map<PedId, ParamBounds>& bounds, const std::map<PedId, Vec2>& goals,
                    std::span<const Obstacle> obstacles, const PredictionConfig& config) {
  validate(config);
  std::map<PedId, MotionModel> clamped;
  std::map<PedId, Vec2> goal_now;
  for (const auto& [id, state] : current.states) {
    const auto m = models.find(id);
    if (m == models.end()) throw MissingModel("no motion model for pedestrian " + std::to_string(id));
    const auto b = bounds.find(id);
    if (b == bounds.end()) throw MissingBounds("no bounds for pedestrian " + std::to_string(id));
    const auto g = goals.find(id);
    if (g == goals.end()) throw MissingModel("no goal for pedestrian " + std::to_string(id));
    auto a = clamp_params(m->second, b->second).as_array();
    for (double& v : a) v = std::max(v, kParamFloor);
    clamped[id] = MotionModel::from_array(a);
    goal_now[id] = g->second;
  }

  const std::int64_t steps = to_steps(config.horizon, config.dt);
  const std::int64_t resample =
      std::isinf(config.resample_interval) ? 0 : std::max<std::int64_t>(1, to_steps(config.resample_interval, config.dt));

  Predictions out;
  for (const auto& [id, state] : current.states) {
    PredictedTrack t{id, current.step, current.time, config.dt, {state.p}};
    t.positions.reserve(static_cast<std::size_t>(steps + 1));
    out.emplace(id, std::move(t));
  }
  CrowdFrame frame = current;
  for (std::int64_t k = 1; k <= steps; ++k) {
    frame = step_crowd(frame, clamped, goal_now, obstacles, config.dt, config.rvo);
    for (const auto& [id, state] : frame.states) out[id].positions.push_back(state.p);
    if (resample > 0 && k % resample == 0) {
      for (const auto& [id, state] : frame.states) {
        if (norm(state.v_pref) > 1e-9) goal_now[id] = heading_goal(state.p, state.v_pref, config.goal_extension);
      }
    }
  }
  return out;
}

AccuracyResult accuracy(const Predictions& predicted, std::span<const Track> truth, double window,
                        double threshold) {
  if (!(window > 0.0)) throw ConfigError("accuracy window must be positive");
  std::map<PedId, const Track*> by_id;
  for (const auto& t : truth) by_id[t.id] = &t;

  AccuracyResult r;
  for (const auto& [id, p] : predicted) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) continue;
    const std::int64_t steps = to_steps(window, p.dt);
    if (steps + 1 > static_cast<std::int64_t>(p.positions.size())) {
      throw ConfigError("accuracy window exceeds the prediction horizon");
    }
    const Track& t = *it->second;
    if (!t.covers(p.start_step + 1) || !t.covers(p.start_step + steps)) continue;
    double sum = 0.0;
    for (std::int64_t k = 1; k <= steps; ++k) {
      sum += distance(p.positions[static_cast<std::size_t>(k)], t.at_step(p.start_step + k));
    }
    ++r.evaluated;
    if (sum / static_cast<double>(steps) < threshold) ++r.successes;
  }
  if (r.evaluated == 0) throw NoEvaluablePedestrians("no prediction overlaps the ground truth window");
  r.ratio = static_cast<double>(r.successes) / static_cast<double>(r.evaluated);
  return r;
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kSocioSense: return "sociosense";
    case Method::kRolloutNoClamp: return "rollout";
    case Method::kConstantVelocity: return "constant_velocity";
    case Method::kKalman: return "kalman";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  throw ConfigError("unknown method: " + std::string(name));
}

const BenchmarkRow* BenchmarkResult::find(Method m, double window) const {
  for (const auto& r : rows) {
    if (r.method == m && std::abs(r.window - window) < 1e-9) return &r;
  }
  return nullptr;
}

BenchmarkResult benchmark(std::span<const Track> dataset, std::span<const Obstacle> obstacles,
                          const BenchmarkConfig& config) {
  const PredictionConfig& pc = config.prediction;
  validate(pc);
  const double dt = pc.dt;
  if (config.windows.empty()) throw ConfigError("at least one window is required");
  if (config.methods.empty()) throw ConfigError("at least one method is required");
  for (double w : config.windows) {
    if (!(w > 0.0) || w > pc.horizon + 1e-9) throw ConfigError("windows must lie in (0, horizon]");
  }
  if (!(config.eval_interval > 0.0)) throw ConfigError("evaluation interval must be positive");
  for (const auto& t : dataset) {
    if (std::abs(t.dt - dt) > 1e-12) throw ConfigError("track dt differs from prediction dt");
  }
  if (dataset.empty()) throw DatasetTooShort("dataset has no tracks");

  std::int64_t s0 = dataset.front().first_step, s_end = dataset.front().last_step();
  for (const auto& t : dataset) {
    s0 = std::min(s0, t.first_step);
    s_end = std::max(s_end, t.last_step());
  }
  const std::int64_t stride = std::max<std::int64_t>(1, to_steps(config.eval_interval, dt));
  const std::int64_t min_hist = to_steps(config.min_history, dt);
  const std::int64_t est_hist = std::max(min_hist, to_steps(config.estimation_window, dt));
  const std::int64_t head_hist = std::max<std::int64_t>(1, to_steps(config.heading_window, dt));
  const std::int64_t horizon = to_steps(pc.horizon, dt);
  const bool rollouts = std::any_of(config.methods.begin(), config.methods.end(), [](Method m) {
    return m == Method::kSocioSense || m == Method::kRolloutNoClamp;
  });

  struct Tally {
    double sum = 0.0;
    int pedestrians = 0;
    int instants = 0;
  };
  std::map<std::pair<Method, std::size_t>, Tally> tally;
  std::map<PedId, ParamBounds> previous_bounds;
  BenchmarkResult result;

  for (std::int64_t s = s0 + min_hist; s < s_end; s += stride) {
    std::vector<Track> history, recent;
    std::vector<Track> scored;
    for (const auto& t : dataset) {
      if (!t.covers(s)) continue;
      history.push_back(slice(t, t.first_step, s));
      recent.push_back(slice(t, s - est_hist, s));
      if (s - t.first_step >= min_hist) scored.push_back(recent.back());
    }
    if (scored.empty()) continue;
    std::map<PedId, bool> is_scored;
    for (const auto& t : scored) is_scored[t.id] = true;

    std::map<PedId, MotionEstimate> estimates;
    if (rollouts) {
      const std::vector<CrowdFrame> env_frames = frames(recent, dt);
      Environment env{env_frames, obstacles, nullptr};
      estimates = estimate_all(scored, env, config.noise, config.seed, config.estimation);
    }

    CrowdFrame frame;
    frame.step = s;
    frame.time = static_cast<double>(s) * dt;
    std::map<PedId, MotionModel> models;
    std::map<PedId, Vec2> goals;
    std::map<PedId, ParamBounds> clamp_bounds, open_bounds;
    std::map<PedId, std::pair<Vec2, Vec2>> linear, kalman;
    for (const auto& h : history) {
      const Vec2 p_obs = h.positions.back();
      PedestrianState st{p_obs, displacement_velocity(h, 4), {}};
      MotionModel m = config.estimation.prior;
      if (auto e = estimates.find(h.id); e != estimates.end()) {
        st.p = e->second.state.p;
        st.v = e->second.state.v;
        m = e->second.model;
        const ParamBounds now = compute_bounds(traits_from_params(m).b, pc.y);
        const auto prev = previous_bounds.find(h.id);
        clamp_bounds[h.id] = prev != previous_bounds.end() ? prev->second : now;
        previous_bounds[h.id] = now;
      } else {
        clamp_bounds[h.id] = ParamBounds::unbounded();
      }
      open_bounds[h.id] = ParamBounds::unbounded();
      goals[h.id] = heading_goal(st.p, displacement_velocity(h, head_hist), pc.goal_extension);
      st.v_pref = preferred_velocity(st, goals[h.id], m, pc.rvo);
      frame.states[h.id] = st;
      models[h.id] = m;
      if (is_scored.count(h.id) != 0) {
        linear[h.id] = {p_obs, displacement_velocity(h, to_steps(1.0, dt))};
        kalman[h.id] = kalman_cv(h, config.noise.sigma_r, config.kalman_accel_std);
      }
    }

    for (Method method : config.methods) {
      Predictions pred;
      switch (method) {
        case Method::kSocioSense:
          pred = predict(frame, models, clamp_bounds, goals, obstacles, pc);
          break;
        case Method::kRolloutNoClamp:
          pred = predict(frame, models, open_bounds, goals, obstacles, pc);
          break;
        case Method::kConstantVelocity:
          for (const auto& [id, pv] : linear) pred[id] = linear_track(id, s, dt, pv.first, pv.second, horizon);
          break;
        case Method::kKalman:
          for (const auto& [id, pv] : kalman) pred[id] = linear_track(id, s, dt, pv.first, pv.second, horizon);
          break;
      }
      for (auto it = pred.begin(); it != pred.end();) {
        it = is_scored.count(it->first) != 0 ? std::next(it) : pred.erase(it);
      }
      for (std::size_t wi = 0; wi < config.windows.size(); ++wi) {
        AccuracyResult a;
        try {
          a = accuracy(pred, dataset, config.windows[wi], config.threshold);
        } catch (const NoEvaluablePedestrians&) {
          continue;
        }
        Tally& t = tally[{method, wi}];
        t.sum += a.ratio;
        t.pedestrians += a.evaluated;
        ++t.instants;
        result.series.push_back({frame.time, method, config.windows[wi], a.ratio, a.evaluated});
      }
    }
  }

  if (tally.empty()) throw DatasetTooShort("no evaluation instant has enough history and ground truth");
  for (Method method : config.methods) {
    for (std::size_t wi = 0; wi < config.windows.size(); ++wi) {
      const auto it = tally.find({method, wi});
      BenchmarkRow row{method, config.windows[wi], 0.0, 0, 0};
      if (it != tally.end()) {
        row.accuracy = it->second.sum / it->second.instants;
        row.n_pedestrians = it->second.pedestrians;
        row.n_instants = it->second.instants;
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

}  // namespace crowdsense
