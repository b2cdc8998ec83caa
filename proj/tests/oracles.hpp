// Copyright 2026 The Shadowcast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference implementations used as test oracles. They share no
// code with the library beyond plain value types.

#ifndef SHADOWCAST_TESTS_ORACLES_HPP_
#define SHADOWCAST_TESTS_ORACLES_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "shadowcast/vec.hpp"

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

struct Frame {
  double lw = 10.0, theta_w = kPi, lv = 5.0, theta_v = 34.0 * kPi / 180.0;
  double hx = 0.0, hy = 0.0, phi = kPi / 2.0;
};

// Linear shadow mapping written as the affine maps it is.
inline double virtual_radius(const Frame& f, double rw) { return f.lv * (1.0 - rw / f.lw); }
inline double virtual_bearing(const Frame& f, double bw) { return bw * f.theta_v / f.theta_w; }

// World bearing 0 points to the human's right (heading phi - pi/2) and sweeps
// clockwise through the rear.
inline shadowcast::Vec2 world_point(const Frame& f, double rw, double bw) {
  const double a = f.phi - kPi / 2.0 - bw;
  return {f.hx + rw * std::cos(a), f.hy + rw * std::sin(a)};
}

// Virtual bearing 0 is the right sector edge, heading phi - theta_v/2.
inline shadowcast::Vec2 virtual_point(const Frame& f, double rv, double bv) {
  const double a = f.phi - f.theta_v / 2.0 + bv;
  return {f.hx + rv * std::cos(a), f.hy + rv * std::sin(a)};
}

// Tip of a vertical pole of height h standing at p under a sun at elevation
// tilt and azimuth pan: the shadow points along pan with length h / tan(tilt).
inline shadowcast::Vec2 flat_tip(shadowcast::Vec2 p, double h, double tilt, double pan) {
  const double len = h * std::cos(tilt) / std::sin(tilt);
  return {p.x + len * std::cos(pan), p.y + len * std::sin(pan)};
}

using M2 = std::array<std::array<double, 2>, 2>;
using V2 = std::array<double, 2>;

inline V2 mat_vec(const M2& m, const V2& v) {
  V2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i] += m[i][j] * v[j];
  return out;
}

// Discrete PID over a full error history with per-step integral clamping and
// final rate clamping.
inline V2 pid(const M2& kp, const M2& ki, const M2& kd, const std::vector<V2>& errors,
              double integral_limit, const V2& rate_limit) {
  V2 sum{0.0, 0.0};
  for (const V2& e : errors)
    for (int i = 0; i < 2; ++i)
      sum[i] = std::fmax(-integral_limit, std::fmin(integral_limit, sum[i] + e[i]));
  const V2& e = errors.back();
  const V2 prev = errors.size() > 1 ? errors[errors.size() - 2] : V2{0.0, 0.0};
  const V2 p = mat_vec(kp, e);
  const V2 i = mat_vec(ki, sum);
  const V2 d = mat_vec(kd, {e[0] - prev[0], e[1] - prev[1]});
  V2 u{};
  for (int c = 0; c < 2; ++c)
    u[c] = std::fmax(-rate_limit[c], std::fmin(rate_limit[c], p[c] + i[c] + d[c]));
  return u;
}

inline V2 plant(const V2& x, const V2& u, const V2& dp, double a, double b, double f,
                double g) {
  const M2 B{{{-a, 0.0}, {0.0, b}}};
  const M2 F{{{-f, 0.0}, {0.0, g}}};
  const V2 bu = mat_vec(B, u);
  const V2 fd = mat_vec(F, dp);
  return {x[0] + bu[0] + fd[0], x[1] + bu[1] + fd[1]};
}

// Height field sampled by point lookup; cells own their lower edges.
struct Grid {
  double ox, oy, cell;
  int nx, ny;
  std::vector<double> h;  // row-major, y outer

  std::optional<double> height_at(double x, double y) const {
    const double fx = std::floor((x - ox) / cell);
    const double fy = std::floor((y - oy) / cell);
    if (fx < 0 || fy < 0 || fx >= nx || fy >= ny) return std::nullopt;
    return h[static_cast<std::size_t>(fy) * nx + static_cast<std::size_t>(fx)];
  }
};

// Fine fixed-step march followed by bisection on "below the surface".
inline std::optional<shadowcast::Vec3> march(const Grid& g, shadowcast::Vec3 o,
                                             shadowcast::Vec3 d, double step,
                                             double t_max) {
  const auto at = [&](double t) { return o + t * d; };
  const auto inside = [&](double t) {
    const shadowcast::Vec3 p = at(t);
    const auto h = g.height_at(p.x, p.y);
    return h && p.z <= *h;
  };
  double prev = 0.0;
  for (double t = step; t <= t_max; t += step) {
    if (inside(t)) {
      double lo = prev, hi = t;
      for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) ? hi : lo) = mid;
      }
      return at(hi);
    }
    prev = t;
  }
  return std::nullopt;
}

}  // namespace oracle

#endif  // SHADOWCAST_TESTS_ORACLES_HPP_
