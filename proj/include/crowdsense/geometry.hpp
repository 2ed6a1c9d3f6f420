/*
 * geometry.hpp
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

#ifndef CROWDSENSE_GEOMETRY_HPP_
#define CROWDSENSE_GEOMETRY_HPP_

#include <algorithm>
#include <cmath>
#include <limits>

namespace crowdsense {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Two-dimensional vector in world coordinates (meters, or m/s for velocities).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
constexpr double abs_sq(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::sqrt(abs_sq(v)); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

inline Vec2 normalized(const Vec2& v) {
  const double n = norm(v);
  return n > 0.0 ? v / n : Vec2{};
}

/// Rotates `v` by the rotation that maps +x onto the unit vector `dir`.
constexpr Vec2 rotate_to(const Vec2& v, const Vec2& dir) {
  return {v.x * dir.x - v.y * dir.y, v.x * dir.y + v.y * dir.x};
}

/// Line segment between two distinct points.
struct Segment {
  Vec2 a;
  Vec2 b;
};

inline Vec2 closest_point_on_segment(const Segment& s, const Vec2& p) {
  const Vec2 d = s.b - s.a;
  const double len_sq = abs_sq(d);
  if (len_sq == 0.0) return s.a;
  const double t = std::clamp(dot(p - s.a, d) / len_sq, 0.0, 1.0);
  return s.a + d * t;
}

inline double distance_to_segment(const Segment& s, const Vec2& p) {
  return distance(p, closest_point_on_segment(s, p));
}

inline bool segments_intersect(const Segment& s, const Segment& t) {
  const auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) {
    return cross(b - a, c - a);
  };
  const double d1 = orient(t.a, t.b, s.a);
  const double d2 = orient(t.a, t.b, s.b);
  const double d3 = orient(s.a, s.b, t.a);
  const double d4 = orient(s.a, s.b, t.b);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  const auto on_segment = [](const Segment& seg, const Vec2& p) {
    return std::min(seg.a.x, seg.b.x) <= p.x && p.x <= std::max(seg.a.x, seg.b.x) &&
           std::min(seg.a.y, seg.b.y) <= p.y && p.y <= std::max(seg.a.y, seg.b.y);
  };
  if (d1 == 0 && on_segment(t, s.a)) return true;
  if (d2 == 0 && on_segment(t, s.b)) return true;
  if (d3 == 0 && on_segment(s, t.a)) return true;
  if (d4 == 0 && on_segment(s, t.b)) return true;
  return false;
}

inline double segment_distance(const Segment& s, const Segment& t) {
  if (segments_intersect(s, t)) return 0.0;
  return std::min({distance_to_segment(t, s.a), distance_to_segment(t, s.b),
                   distance_to_segment(s, t.a), distance_to_segment(s, t.b)});
}

}  // namespace crowdsense

#endif  // CROWDSENSE_GEOMETRY_HPP_
