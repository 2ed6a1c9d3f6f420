/*
 * personality.hpp
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

#ifndef CROWDSENSE_PERSONALITY_HPP_
#define CROWDSENSE_PERSONALITY_HPP_

#include <array>
#include <string_view>

#include <Eigen/Dense>

#include "crowdsense/types.hpp"

namespace crowdsense {

inline constexpr int kTraitCount = 6;

enum class Trait { kAggressive = 0, kAssertive, kShy, kActive, kTense, kImpulsive };

inline constexpr std::array<std::string_view, kTraitCount> kTraitNames = {
    "aggressive", "assertive", "shy", "active", "tense", "impulsive"};

using NormalizedParams = Eigen::Matrix<double, 5, 1>;
using TraitValues = Eigen::Matrix<double, kTraitCount, 1>;
using RvoMatrix = Eigen::Matrix<double, kTraitCount, 5>;

/// Weighted behavior classes of one pedestrian.
struct TraitVector {
  TraitValues b = TraitValues::Zero();
  TraitValues w = TraitValues::Ones();  ///< personality weights
};

/// Componentwise parameter range used to clamp estimates before prediction.
struct ParamBounds {
  MotionModel lower;
  MotionModel upper;

  /// Bounds that leave every model unchanged.
  static ParamBounds unbounded();
};

/// Maps normalized motion parameters to the six traits.
const RvoMatrix& rvo_matrix();
/// Moore-Penrose pseudo-inverse of rvo_matrix().
const Eigen::Matrix<double, 5, kTraitCount>& rvo_matrix_pinv();

/// Centers and scales of the parameter normalization.
inline constexpr std::array<double, 5> kParamCenters = {15.0, 10.0, 30.0, 0.8, 1.4};
inline constexpr std::array<double, 5> kParamScales = {13.5, 49.5, 14.5, 0.85, 0.5};

NormalizedParams normalize(const MotionModel& m);
MotionModel denormalize(const NormalizedParams& u);

/// b = rvo_matrix() * normalize(m), unit weights.
TraitVector traits_from_params(const MotionModel& m);

/// Index of the largest trait, ties to the lowest index.
int dominant_trait(const TraitValues& b);

/// The dominant trait is scaled by (1 +/- y/100) and the others by
/// (1 +/- y/300); both perturbed vectors are mapped back through the
/// pseudo-inverse and ordered componentwise. Infinite y gives unbounded().
/// Throws ConfigError for negative or NaN y.
ParamBounds compute_bounds(const TraitValues& b, double y);

/// Componentwise clamp of `m` into [lower, upper].
MotionModel clamp_params(const MotionModel& m, const ParamBounds& bounds);

/// w_i = b_clamped_i / b_unit_i with b_unit the unit-weight traits of
/// `clamped`; components with |b_unit_i| < 1e-9 keep w_i = 1.
TraitVector recompute_weights(const TraitValues& b_clamped, const MotionModel& clamped);

}  // namespace crowdsense

#endif  // CROWDSENSE_PERSONALITY_HPP_
