/*
 * proxemics.cpp
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

#include "crowdsense/proxemics.hpp"

#include <algorithm>
#include <cmath>

#include "crowdsense/error.hpp"

namespace crowdsense {

namespace {

void check_unit(double e) {
  if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("normalized extraversion must lie in [0, 1]");
}

}  // namespace

const PenMatrix& pen_matrix() {
  static const PenMatrix m = [] {
    PenMatrix r;
    r << 0.22, 0.28, -0.09, -0.01, -0.17, 0.31,
         0.16, 0.33, 0.07, 0.53, 0.05, 0.10,
        -0.15, 0.16, 0.47, -0.01, 0.42, -0.08;
    return r;
  }();
  return m;
}

PenVector pen_from_traits(const TraitValues& b) {
  const Eigen::Vector3d v = pen_matrix() * b;
  return {v(0), v(1), v(2)};
}

double normalized_extraversion(const PenVector& pen) {
  const double n = std::sqrt(pen.psychoticism * pen.psychoticism +
                             pen.extraversion * pen.extraversion +
                             pen.neuroticism * pen.neuroticism);
  if (n < 1e-9) return 0.5;
  return std::clamp(pen.extraversion / n, 0.0, 1.0);
}

double personal_distance(double pen_e) {
  check_unit(pen_e);
  return kExtrovertPersonal * pen_e + kIntrovertPersonal * (1.0 - pen_e);
}

double social_distance(double pen_e) {
  check_unit(pen_e);
  return pen_e < 0.5 ? kIntrovertSocial : kExtrovertSocial;
}

ProxemicProfile proxemic_profile(const PenVector& pen) {
  const double e = normalized_extraversion(pen);
  return {personal_distance(e), social_distance(e)};
}

ProxemicProfile proxemic_profile(const MotionModel& m) {
  return proxemic_profile(pen_from_traits(traits_from_params(m).b));
}

}  // namespace crowdsense
