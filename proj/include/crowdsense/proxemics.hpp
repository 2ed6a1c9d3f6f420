/*
 * proxemics.hpp
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

#ifndef CROWDSENSE_PROXEMICS_HPP_
#define CROWDSENSE_PROXEMICS_HPP_

#include <Eigen/Dense>

#include "crowdsense/personality.hpp"

namespace crowdsense {

/// Psychoticism, extraversion and neuroticism factors.
struct PenVector {
  double psychoticism = 0.0;
  double extraversion = 0.0;
  double neuroticism = 0.0;
};

/// Interpersonal distances in centimeters.
struct ProxemicProfile {
  double personal = 0.0;  ///< d_p (cm)
  double social = 0.0;    ///< d_s (cm)
};

inline constexpr double kIntrovertPersonal = 88.9;
inline constexpr double kExtrovertPersonal = 179.58;
inline constexpr double kIntrovertSocial = 233.17;
inline constexpr double kExtrovertSocial = 267.97;

using PenMatrix = Eigen::Matrix<double, 3, kTraitCount>;

const PenMatrix& pen_matrix();

PenVector pen_from_traits(const TraitValues& b);

/// e / |(p, e, n)| clamped to [0, 1]; 0.5 for a (near) zero vector.
double normalized_extraversion(const PenVector& pen);

/// Linear between the introvert and extrovert personal distances.
/// Throws ConfigError outside [0, 1].
double personal_distance(double pen_e);

/// Introvert social distance below 0.5, extrovert otherwise.
/// Throws ConfigError outside [0, 1].
double social_distance(double pen_e);

ProxemicProfile proxemic_profile(const PenVector& pen);
ProxemicProfile proxemic_profile(const MotionModel& m);

}  // namespace crowdsense

#endif  // CROWDSENSE_PROXEMICS_HPP_
