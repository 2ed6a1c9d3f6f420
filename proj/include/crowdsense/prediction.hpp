/*
 * prediction.hpp
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

#ifndef CROWDSENSE_PREDICTION_HPP_
#define CROWDSENSE_PREDICTION_HPP_

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "crowdsense/datasets.hpp"
#include "crowdsense/estimation.hpp"
#include "crowdsense/personality.hpp"
#include "crowdsense/rvo.hpp"

namespace crowdsense {

struct PredictionConfig {
  double horizon = 5.0;  ///< s
  double dt = kDefaultDt;
  /// Simulated time between goal re-extrapolations; infinity keeps the initial goals.
  double resample_interval = 1.0;
  double y = 5.0;  ///< bound width (percent)
  double goal_extension = 50.0;  ///< m, beyond reach within the horizon
  RvoConfig rvo;
};

struct PredictedTrack {
  PedId id = 0;
  std::int64_t start_step = 0;
  double start_time = 0.0;
  double dt = kDefaultDt;
  std::vector<Vec2> positions;  ///< positions[k] at start_time + k * dt
};

using Predictions = std::map<PedId, PredictedTrack>;

/// Clamps every model into its bounds and rolls the whole crowd forward with
/// step_crowd for horizon / dt steps. Each resample interval, goals are moved
/// goal_extension meters ahead along the rolled preferred heading.
/// Throws MissingModel, MissingBounds, ConfigError.
Predictions predict(const CrowdFrame& current, const std::map<PedId, MotionModel>& models,
                    const std::map<PedId, ParamBounds>& bounds, const std::map<PedId, Vec2>& goals,
                    std::span<const Obstacle> obstacles, const PredictionConfig& config = {});

struct AccuracyResult {
  double ratio = 0.0;
  int evaluated = 0;
  int successes = 0;
};

/// Share of pedestrians whose mean position error over prediction steps
/// 1..window/dt is below `threshold`. Pedestrians whose ground truth does not
/// cover the whole window are left out. Throws NoEvaluablePedestrians, ConfigError.
AccuracyResult accuracy(const Predictions& predicted, std::span<const Track> truth, double window,
                        double threshold = 0.8);

enum class Method { kSocioSense, kRolloutNoClamp, kConstantVelocity, kKalman };

inline constexpr std::array<Method, 4> kAllMethods = {
    Method::kSocioSense, Method::kRolloutNoClamp, Method::kConstantVelocity, Method::kKalman};

std::string_view method_name(Method m);
/// Throws ConfigError for an unknown name.
Method parse_method(std::string_view name);

struct BenchmarkConfig {
  PredictionConfig prediction;
  std::vector<double> windows{1.0, 5.0};
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  double threshold = 0.8;        ///< m
  double eval_interval = 1.0;    ///< s between evaluation instants
  double min_history = 1.0;      ///< s of history before a pedestrian is scored
  double estimation_window = 3.0;  ///< s of most recent history used for estimation
  double heading_window = 1.0;   ///< s of history defining the initial goal heading
  double kalman_accel_std = 0.5; ///< m/s^2, constant-velocity filter process noise
  NoiseConfig noise;
  EstimationConfig estimation;
  std::uint64_t seed = 0;
};

struct BenchmarkRow {
  Method method = Method::kSocioSense;
  double window = 0.0;
  double accuracy = 0.0;    ///< mean of per-instant ratios
  int n_pedestrians = 0;    ///< pedestrian-instants scored
  int n_instants = 0;
};

struct InstantAccuracy {
  double time = 0.0;
  Method method = Method::kSocioSense;
  double window = 0.0;
  double accuracy = 0.0;
  int evaluated = 0;
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;
  std::vector<InstantAccuracy> series;

  const BenchmarkRow* find(Method m, double window) const;
};

/// Sliding evaluation over a dataset: every eval_interval, each method
/// predicts from history up to that instant and is scored on every window.
/// Throws DatasetTooShort when no instant can be scored.
BenchmarkResult benchmark(std::span<const Track> dataset, std::span<const Obstacle> obstacles,
                          const BenchmarkConfig& config = {});

}  // namespace crowdsense

#endif  // CROWDSENSE_PREDICTION_HPP_
