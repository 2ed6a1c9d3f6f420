/*
 * support.hpp
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

#ifndef CROWDSENSE_TESTS_SUPPORT_HPP_
#define CROWDSENSE_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <random>

#include "crowdsense/geometry.hpp"
#include "crowdsense/types.hpp"

namespace testing {

/// Seeded generator for hand-rolled property checks.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal(double sd = 1.0) { return std::normal_distribution<double>(0.0, sd)(rng_); }
  crowdsense::Vec2 point(double extent) { return {uniform(-extent, extent), uniform(-extent, extent)}; }

  /// Motion model with every component drawn from a plausible range.
  crowdsense::MotionModel model() {
    return {uniform(2.0, 30.0), static_cast<double>(integer(1, 20)), uniform(5.0, 45.0),
            uniform(0.2, 1.2), uniform(0.5, 2.0)};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline bool near(const crowdsense::Vec2& a, const crowdsense::Vec2& b, double tol) {
  return crowdsense::distance(a, b) <= tol;
}

}  // namespace testing

#endif  // CROWDSENSE_TESTS_SUPPORT_HPP_
