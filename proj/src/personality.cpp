/*
 * personality.cpp
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

#include "crowdsense/personality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crowdsense/error.hpp"

namespace crowdsense {

const RvoMatrix& rvo_matrix() {
  static const RvoMatrix m = [] {
    RvoMatrix r;
    r << -0.02, 0.32, 0.13, -0.41, 1.02,
          0.03, 0.22, 0.11, -0.28, 1.05,
         -0.04, -0.08, 0.02, 0.58, -0.88,
         -0.06, 0.04, 0.04, -0.16, 1.07,
          0.10, 0.07, -0.08, 0.19, 0.15,
          0.03, -0.15, 0.03, -0.23, 0.23;
    return r;
  }();
  return m;
}

const Eigen::Matrix<double, 5, kTraitCount>& rvo_matrix_pinv() {
  static const Eigen::Matrix<double, 5, kTraitCount> p =
      rvo_matrix().completeOrthogonalDecomposition().pseudoInverse();
  return p;
}

ParamBounds ParamBounds::unbounded() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {{-inf, -inf, -inf, -inf, -inf}, {inf, inf, inf, inf, inf}};
}

NormalizedParams normalize(const MotionModel& m) {
  const auto a = m.as_array();
  NormalizedParams u;
  for (int i = 0; i < 5; ++i) {
    const auto k = static_cast<std::size_t>(i);
    u(i) = (a[k] - kParamCenters[k]) / kParamScales[k];
  }
  return u;
}

MotionModel denormalize(const NormalizedParams& u) {
  std::array<double, 5> a{};
  for (int i = 0; i < 5; ++i) {
    const auto k = static_cast<std::size_t>(i);
    a[k] = u(i) * kParamScales[k] + kParamCenters[k];
  }
  return MotionModel::from_array(a);
}

TraitVector traits_from_params(const MotionModel& m) {
  TraitVector t;
  t.b = rvo_matrix() * normalize(m);
  return t;
}

int dominant_trait(const TraitValues& b) {
  int best = 0;
  for (int i = 1; i < kTraitCount; ++i) {
    if (b(i) > b(best)) best = i;
  }
  return best;
}

ParamBounds compute_bounds(const TraitValues& b, double y) {
  if (std::isnan(y) || y < 0.0) throw ConfigError("bound width y must be non-negative");
  if (std::isinf(y)) return ParamBounds::unbounded();

  const int d = dominant_trait(b);
  TraitValues up = b, down = b;
  for (int i = 0; i < kTraitCount; ++i) {
    const double frac = i == d ? y / 100.0 : y / 300.0;
    up(i) = b(i) * (1.0 + frac);
    down(i) = b(i) * (1.0 - frac);
  }
  const auto a = denormalize(rvo_matrix_pinv() * up).as_array();
  const auto c = denormalize(rvo_matrix_pinv() * down).as_array();
  std::array<double, 5> lo{}, hi{};
  for (std::size_t i = 0; i < 5; ++i) {
    lo[i] = std::min(a[i], c[i]);
    hi[i] = std::max(a[i], c[i]);
  }
  return {MotionModel::from_array(lo), MotionModel::from_array(hi)};
}

MotionModel clamp_params(const MotionModel& m, const ParamBounds& bounds) {
  const auto v = m.as_array();
  const auto lo = bounds.lower.as_array();
  const auto hi = bounds.upper.as_array();
  std::array<double, 5> out{};
  for (std::size_t i = 0; i < 5; ++i) out[i] = std::clamp(v[i], lo[i], hi[i]);
  return MotionModel::from_array(out);
}

TraitVector recompute_weights(const TraitValues& b_clamped, const MotionModel& clamped) {
  const TraitValues unit = traits_from_params(clamped).b;
  TraitVector t;
  t.b = b_clamped;
  for (int i = 0; i < kTraitCount; ++i) {
    t.w(i) = std::abs(unit(i)) < 1e-9 ? 1.0 : b_clamped(i) / unit(i);
  }
  return t;
}

}  // namespace crowdsense
