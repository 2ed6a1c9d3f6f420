/*
 * estimation.cpp
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

#include "crowdsense/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "crowdsense/enkf.hpp"
#include "crowdsense/error.hpp"

namespace crowdsense {

namespace si = state_index;

namespace {

using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

void floor_parameters(Eigen::MatrixXd& members) {
  members.bottomRows(MotionModel::kSize) = members.bottomRows(MotionModel::kSize).cwiseMax(kParamFloor);
}

Eigen::VectorXd noise_vector(const ProcessNoise& q) {
  return Eigen::Map<const Eigen::VectorXd>(q.data(), si::kDim);
}

/// Gain mask: interaction parameters are only updated when some member's
/// transition actually depended on them.
Mask update_mask(bool interacting) {
  Mask mask = Mask::Constant(si::kDim, true);
  if (!interacting) {
    mask(si::kNeighborDist) = false;
    mask(si::kMaxNeighbors) = false;
    mask(si::kHorizon) = false;
    mask(si::kRadius) = false;
  }
  return mask;
}

std::vector<Neighbor> neighbor_pool(PedId self_id, const CrowdFrame* env,
                                    const std::map<PedId, MotionModel>* env_models,
                                    const MotionModel& fallback) {
  std::vector<Neighbor> pool;
  if (env == nullptr) return pool;
  for (const auto& [id, state] : env->states) {
    if (id == self_id) continue;
    MotionModel model = fallback;
    if (env_models != nullptr) {
      if (auto it = env_models->find(id); it != env_models->end()) model = it->second;
    }
    pool.push_back({id, state, model});
  }
  return pool;
}

/// Deterministic part of the transition, f(x), applied to each column.
/// Returns whether any member interacted with a neighbor or obstacle.
bool propagate(Eigen::MatrixXd& members, PedId self_id, const std::vector<Neighbor>& pool,
               std::span<const Obstacle> obstacles, const Vec2& goal, double dt,
               const RvoConfig& rvo, Execution exec) {
  const Eigen::Index count = members.cols();
  std::vector<char> interacting(static_cast<std::size_t>(count), 0);
  const auto advance = [&](Eigen::Index j) {
    AugmentedState s = AugmentedState::from_vector(members.col(j));
    s.kinematics.v_pref = preferred_velocity(s.kinematics, goal, s.model, rvo);
    const VelocityDecision d =
        compute_new_velocity(self_id, s.kinematics, s.model, pool, obstacles, rvo);
    s.kinematics.v = d.velocity;
    s.kinematics.p = s.kinematics.p + d.velocity * dt;
    members.col(j) = s.to_vector();
    interacting[static_cast<std::size_t>(j)] = d.interacting() ? 1 : 0;
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < count; ++j) advance(j);
  } else {
    for (Eigen::Index j = 0; j < count; ++j) advance(j);
  }
  return std::any_of(interacting.begin(), interacting.end(), [](char c) { return c != 0; });
}

Eigen::MatrixXd observe(const Eigen::MatrixXd& members) {
  return members.topRows(2);
}

Vec2 initial_velocity(const Track& track) {
  const std::size_t k = std::min<std::size_t>(4, track.positions.size() - 1);
  return (track.positions[k] - track.positions[0]) / (static_cast<double>(k) * track.dt);
}

Eigen::MatrixXd initial_members(const Track& track, const Vec2& goal, const NoiseConfig& noise,
                                const EstimationConfig& config, enkf::Rng& rng) {
  const Eigen::Index count = config.ensemble_size;
  Eigen::MatrixXd members(si::kDim, count);
  const Eigen::MatrixXd pos_noise = enkf::gaussian_samples(noise.sigma_r, count, rng);
  const Eigen::MatrixXd vel_noise = enkf::gaussian_samples_diag(
      Eigen::Vector2d::Constant(config.initial_velocity_spread * config.initial_velocity_spread),
      count, rng);
  const auto prior = config.prior.as_array();
  Eigen::VectorXd prior_var(MotionModel::kSize);
  for (std::size_t i = 0; i < prior.size(); ++i) {
    prior_var(static_cast<Eigen::Index>(i)) = std::pow(config.prior_spread * prior[i], 2);
  }
  const Eigen::MatrixXd param_noise = enkf::gaussian_samples_diag(prior_var, count, rng);
  const Vec2 v0 = initial_velocity(track);
  for (Eigen::Index j = 0; j < count; ++j) {
    AugmentedState s;
    s.kinematics.p = track.positions.front() + Vec2{pos_noise(0, j), pos_noise(1, j)};
    s.kinematics.v = v0 + Vec2{vel_noise(0, j), vel_noise(1, j)};
    std::array<double, MotionModel::kSize> params{};
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i] = std::max(kParamFloor, prior[i] + param_noise(static_cast<Eigen::Index>(i), j));
    }
    s.model = MotionModel::from_array(params);
    s.kinematics.v_pref = preferred_velocity(s.kinematics, goal, s.model, config.rvo);
    members.col(j) = s.to_vector();
  }
  return members;
}

}  // namespace

Eigen::VectorXd AugmentedState::to_vector() const {
  Eigen::VectorXd x(si::kDim);
  x << kinematics.p.x, kinematics.p.y, kinematics.v.x, kinematics.v.y, kinematics.v_pref.x,
      kinematics.v_pref.y, model.neighbor_dist, model.max_neighbors, model.planning_horizon,
      model.radius, model.pref_speed;
  return x;
}

AugmentedState AugmentedState::from_vector(const Eigen::Ref<const Eigen::VectorXd>& x) {
  AugmentedState s;
  s.kinematics.p = {x(si::kPx), x(si::kPy)};
  s.kinematics.v = {x(si::kVx), x(si::kVy)};
  s.kinematics.v_pref = {x(si::kPrefX), x(si::kPrefY)};
  s.model = {x(si::kNeighborDist), x(si::kMaxNeighbors), x(si::kHorizon), x(si::kRadius),
             x(si::kPrefSpeed)};
  return s;
}

AugmentedState Ensemble::mean() const {
  return AugmentedState::from_vector(enkf::ensemble_mean(members));
}

ProcessNoise NoiseConfig::default_process_noise() {
  // position, velocity, preferred velocity, then the five parameters
  return {1e-4, 1e-4, 1e-3, 1e-3, 1e-3, 1e-3, 1e-2, 1e-2, 1e-2, 1e-4, 1e-4};
}

const CrowdFrame* Environment::at_step(std::int64_t step) const {
  const auto it = std::lower_bound(frames.begin(), frames.end(), step,
                                   [](const CrowdFrame& f, std::int64_t s) { return f.step < s; });
  return it != frames.end() && it->step == step ? &*it : nullptr;
}

Ensemble enkf_predict(const Ensemble& ens, PedId self_id, const CrowdFrame& env,
                      std::span<const Obstacle> obstacles, const Vec2& goal, double dt,
                      const ProcessNoise& sigma_q, std::uint64_t rng_seed,
                      const EstimationConfig& config,
                      const std::map<PedId, MotionModel>* env_models, Execution exec) {
  Ensemble out = ens;
  const auto pool = neighbor_pool(self_id, &env, env_models, config.neighbor_model);
  propagate(out.members, self_id, pool, obstacles, goal, dt, config.rvo, exec);
  enkf::Rng rng(rng_seed);
  out.members += enkf::gaussian_samples_diag(noise_vector(sigma_q), out.size(), rng);
  floor_parameters(out.members);
  out.time = ens.time + dt;
  return out;
}

Ensemble enkf_update(const Ensemble& ens, const Vec2& z, const Eigen::Matrix2d& sigma_r,
                     std::uint64_t rng_seed) {
  Ensemble out = ens;
  enkf::Rng rng(rng_seed);
  enkf::analysis(out.members, observe(out.members), Eigen::Vector2d(z.x, z.y), sigma_r, rng);
  floor_parameters(out.members);
  return out;
}

Vec2 extrapolated_goal(const Track& track, double extension) {
  const auto n = track.positions.size();
  const std::size_t back = std::min<std::size_t>(
      n - 1, static_cast<std::size_t>(std::lround(1.0 / track.dt)));
  const Vec2 heading = track.positions[n - 1] - track.positions[n - 1 - back];
  const Vec2 dir = norm(heading) > 1e-9 ? normalized(heading) : Vec2{1.0, 0.0};
  return track.positions.back() + dir * extension;
}

EmResult em_estimate_sigma_q(const Track& track, const Environment& env, const NoiseConfig& init,
                             int iterations, std::uint64_t rng_seed,
                             const EstimationConfig& config) {
  if (iterations < 1) throw ConfigError("EM needs at least one iteration");
  if (track.positions.size() < 5) throw TrackTooShort("EM needs at least 5 track samples");
  if (config.ensemble_size < 2) throw ConfigError("ensemble size must be at least 2");

  const Vec2 goal = extrapolated_goal(track, config.goal_extension);
  const auto n = static_cast<std::int64_t>(track.positions.size());
  const Eigen::Index count = config.ensemble_size;

  // Spin-up samples, where the prior ensemble collapses onto the data, are
  // excluded from the M-step when the track is long enough.
  const std::int64_t burn_in = n - 1 > 2 * config.em_burn_in ? config.em_burn_in : 0;

  EmResult result;
  result.sigma_q = init.sigma_q;
  for (int iter = 0; iter < iterations; ++iter) {
    // Common random numbers across iterations keep successive E-steps comparable.
    enkf::Rng rng(rng_seed);
    const Eigen::VectorXd q = noise_vector(result.sigma_q);
    const Eigen::ArrayXd q_inv = q.array().cwiseMax(kVarianceFloor).inverse();

    Ensemble ens{initial_members(track, goal, init, config, rng), track.t0()};
    std::vector<Ensemble> history{ens};
    history.reserve(static_cast<std::size_t>(n));
    Eigen::ArrayXd sq_sum = Eigen::ArrayXd::Zero(si::kDim);
    double weighted_sum = 0.0;
    std::int64_t scored_steps = 0;

    for (std::int64_t k = 1; k < n; ++k) {
      const std::int64_t step = track.first_step + k - 1;
      const auto pool =
          neighbor_pool(track.id, env.at_step(step), env.models, config.neighbor_model);
      Eigen::MatrixXd forecast = ens.members;
      const bool interacting = propagate(forecast, track.id, pool, env.obstacles, goal, track.dt,
                                         config.rvo, Execution::kSerial);
      const Eigen::MatrixXd deterministic = forecast;
      forecast += enkf::gaussian_samples_diag(q, count, rng);
      floor_parameters(forecast);

      const Vec2& z = track.positions[static_cast<std::size_t>(k)];
      enkf::analysis(forecast, observe(forecast), Eigen::Vector2d(z.x, z.y), init.sigma_r, rng,
                     update_mask(interacting));
      floor_parameters(forecast);

      if (k > burn_in) {
        const Eigen::ArrayXXd sq = (forecast - deterministic).array().square();
        sq_sum += sq.rowwise().sum();
        weighted_sum += (sq.colwise() * q_inv).sum();
        ++scored_steps;
      }

      ens.members = std::move(forecast);
      ens.time = static_cast<double>(track.first_step + k) * track.dt;
      history.push_back(ens);
    }

    const double samples = static_cast<double>(count) * static_cast<double>(scored_steps);
    result.log_likelihood.push_back(-weighted_sum / static_cast<double>(count));
    for (int i = 0; i < si::kDim; ++i) {
      double v = sq_sum(i) / samples;
      if (i >= si::kNeighborDist) v = std::min(v, init.sigma_q[static_cast<std::size_t>(i)]);
      if (v < kVarianceFloor) {
        v = kVarianceFloor;
        result.collapsed = true;
      }
      result.sigma_q[static_cast<std::size_t>(i)] = v;
    }
    result.ensembles = std::move(history);
  }
  return result;
}

MotionEstimate estimate_motion_model(const Track& track, const Environment& env,
                                     const NoiseConfig& noise, std::uint64_t rng_seed,
                                     const EstimationConfig& config) {
  const double duration = static_cast<double>(track.positions.size() - 1) * track.dt;
  if (track.positions.size() < 5 || duration < 1.0 - 1e-9) {
    throw TrackTooShort("pedestrian " + std::to_string(track.id) + " has only " +
                        std::to_string(duration) + " s of data");
  }
  const EmResult em =
      em_estimate_sigma_q(track, env, noise, config.em_iterations, rng_seed, config);
  const AugmentedState final_state = em.ensembles.back().mean();
  MotionEstimate out;
  out.id = track.id;
  out.model = final_state.model;
  out.state = final_state.kinematics;
  out.time = em.ensembles.back().time;
  out.sigma_q = em.sigma_q;
  out.collapsed = em.collapsed;
  out.seed = rng_seed;
  return out;
}

std::map<PedId, MotionEstimate> estimate_all(std::span<const Track> tracks, const Environment& env,
                                             const NoiseConfig& noise, std::uint64_t rng_seed,
                                             const EstimationConfig& config, Execution exec) {
  std::vector<std::optional<MotionEstimate>> results(tracks.size());
  const auto run = [&](std::size_t i) {
    try {
      results[i] = estimate_motion_model(tracks[i], env, noise, rng_seed, config);
    } catch (const TrackTooShort&) {
      results[i].reset();
    }
  };
  const auto n = static_cast<std::ptrdiff_t>(tracks.size());
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) run(static_cast<std::size_t>(i));
  }
  std::map<PedId, MotionEstimate> out;
  for (auto& r : results) {
    if (r) out.emplace(r->id, std::move(*r));
  }
  return out;
}

}  // namespace crowdsense
