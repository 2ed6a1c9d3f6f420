/*
 * estimation.hpp
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

#ifndef CROWDSENSE_ESTIMATION_HPP_
#define CROWDSENSE_ESTIMATION_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "crowdsense/datasets.hpp"
#include "crowdsense/rvo.hpp"
#include "crowdsense/types.hpp"

namespace crowdsense {

enum class Execution { kParallel, kSerial };

/// Layout of the augmented filter state: kinematics followed by the five
/// motion-model parameters.
namespace state_index {
inline constexpr int kPx = 0, kPy = 1, kVx = 2, kVy = 3, kPrefX = 4, kPrefY = 5;
inline constexpr int kNeighborDist = 6, kMaxNeighbors = 7, kHorizon = 8, kRadius = 9,
                     kPrefSpeed = 10;
inline constexpr int kDim = 11;
}  // namespace state_index

/// Floor applied to every motion-model parameter after each filter step.
inline constexpr double kParamFloor = 1e-3;
/// Floor applied to process-noise variances by the M-step.
inline constexpr double kVarianceFloor = 1e-12;

struct AugmentedState {
  PedestrianState kinematics;
  MotionModel model;

  Eigen::VectorXd to_vector() const;
  static AugmentedState from_vector(const Eigen::Ref<const Eigen::VectorXd>& x);
};

/// Ensemble members stored column-wise (kDim x E).
struct Ensemble {
  Eigen::MatrixXd members;
  double time = 0.0;

  Eigen::Index size() const { return members.cols(); }
  AugmentedState member(Eigen::Index j) const { return AugmentedState::from_vector(members.col(j)); }
  AugmentedState mean() const;
};

using ProcessNoise = std::array<double, state_index::kDim>;

struct NoiseConfig {
  Eigen::Matrix2d sigma_r = Eigen::Matrix2d::Identity() * 0.0025;  ///< observation covariance (m^2)
  ProcessNoise sigma_q = default_process_noise();                   ///< diagonal process covariance

  static ProcessNoise default_process_noise();
};

struct EstimationConfig {
  int ensemble_size = 100;
  int em_iterations = 5;
  /// Leading filter steps left out of the M-step average.
  std::int64_t em_burn_in = 10;
  /// Relative standard deviation of the initial parameter ensemble around `prior`.
  double prior_spread = 0.2;
  MotionModel prior{15.0, 10.0, 30.0, 0.8, 1.4};
  /// Standard deviation of the initial velocity spread (m/s).
  double initial_velocity_spread = 0.1;
  /// Goal placed this far beyond the last observation along the final heading (m).
  double goal_extension = 2.0;
  /// Model assumed for surrounding pedestrians without an entry in `env_models`.
  MotionModel neighbor_model{15.0, 10.0, 30.0, 0.8, 1.4};
  RvoConfig rvo;
};

/// Read-only view of the surrounding crowd during estimation.
struct Environment {
  std::span<const CrowdFrame> frames;  ///< sorted by step
  std::span<const Obstacle> obstacles;
  const std::map<PedId, MotionModel>* models = nullptr;

  const CrowdFrame* at_step(std::int64_t step) const;
};

/// Advances every member through the crowd model and adds N(0, sigma_q) noise.
/// Neighbors come from `env` at their point estimates; `self_id` is excluded.
Ensemble enkf_predict(const Ensemble& ens, PedId self_id, const CrowdFrame& env,
                      std::span<const Obstacle> obstacles, const Vec2& goal, double dt,
                      const ProcessNoise& sigma_q, std::uint64_t rng_seed,
                      const EstimationConfig& config = {},
                      const std::map<PedId, MotionModel>* env_models = nullptr,
                      Execution exec = Execution::kParallel);

/// Stochastic EnKF analysis against a position observation.
/// Throws DegenerateEnsemble when the innovation covariance is singular.
Ensemble enkf_update(const Ensemble& ens, const Vec2& z, const Eigen::Matrix2d& sigma_r,
                     std::uint64_t rng_seed);

struct EmResult {
  ProcessNoise sigma_q{};
  /// Filtered ensembles of the final E-step, one per track sample.
  std::vector<Ensemble> ensembles;
  /// Expected log-likelihood -sum_t E[r^T Sigma_q^-1 r] for each iteration,
  /// evaluated with that iteration's Sigma_q.
  std::vector<double> log_likelihood;
  /// True when the M-step floored a variance at kVarianceFloor.
  bool collapsed = false;
};

/// Alternates a full EnKF pass over `track` (E-step) with re-estimating the
/// diagonal of Sigma_q from the mean squared one-step residuals
/// x_{t+1} - f(x_t) over members and timesteps (M-step). Parameter-block
/// variances never exceed their values in `init`.
EmResult em_estimate_sigma_q(const Track& track, const Environment& env, const NoiseConfig& init,
                             int iterations, std::uint64_t rng_seed,
                             const EstimationConfig& config = {});

struct MotionEstimate {
  PedId id = 0;
  MotionModel model;
  PedestrianState state;  ///< ensemble mean at the final track sample
  double time = 0.0;
  ProcessNoise sigma_q{};
  bool collapsed = false;
  std::uint64_t seed = 0;
};

/// Runs em_estimate_sigma_q and reports the ensemble-mean parameters and state
/// at the final timestep. Throws TrackTooShort for tracks under 1 s / 5 samples.
MotionEstimate estimate_motion_model(const Track& track, const Environment& env,
                                     const NoiseConfig& noise, std::uint64_t rng_seed,
                                     const EstimationConfig& config = {});

/// Estimates every track independently (parallel across pedestrians). Each
/// pedestrian's filter is seeded with `rng_seed`, so results do not depend on ids
/// or on processing order. Tracks too short to estimate are skipped.
std::map<PedId, MotionEstimate> estimate_all(std::span<const Track> tracks, const Environment& env,
                                             const NoiseConfig& noise, std::uint64_t rng_seed,
                                             const EstimationConfig& config = {},
                                             Execution exec = Execution::kParallel);

/// Goal used for a pedestrian during estimation: the last position pushed
/// `extension` meters along the heading of the final second.
Vec2 extrapolated_goal(const Track& track, double extension);

}  // namespace crowdsense

#endif  // CROWDSENSE_ESTIMATION_HPP_
