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

#ifndef SHADOWCAST_CONTROLLER_HPP_
#define SHADOWCAST_CONTROLLER_HPP_

#include <array>
#include <cstdint>

#include "shadowcast/geometry.hpp"
#include "shadowcast/light.hpp"
#include "shadowcast/vec.hpp"

namespace shadowcast {

// Row-major 2x2 matrix.
struct Mat2 {
  std::array<std::array<double, 2>, 2> m{};

  static constexpr Mat2 diag(double d0, double d1) {
    return Mat2{{{{d0, 0.0}, {0.0, d1}}}};
  }
  static constexpr Mat2 identity() { return diag(1.0, 1.0); }
  static constexpr Mat2 zero() { return Mat2{}; }

  constexpr double operator()(int row, int col) const { return m[row][col]; }
  friend constexpr Vec2 operator*(const Mat2& a, Vec2 v) {
    return {a.m[0][0] * v.x + a.m[0][1] * v.y, a.m[1][0] * v.x + a.m[1][1] * v.y};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

// Coefficient matrices of u(k) = Kp e(k) + Ki sum e(tau) + Kd (e(k) - e(k-1)).
// Error channels are (radial meters, bearing radians); outputs are radians.
struct PidGains {
  Mat2 kp = Mat2::diag(0.4, 0.4);
  Mat2 ki = Mat2::diag(0.02, 0.02);
  Mat2 kd = Mat2::diag(0.05, 0.05);

  friend bool operator==(const PidGains&, const PidGains&) = default;
};

// Positive constants of x(k+1) = x(k) + diag(-a, b) u(k) + diag(-f, g) dP_r(k).
struct PlantParams {
  double a = 1.0;
  double b = 1.0;
  double f = 1.0;
  double g = 1.0;

  void validate() const;
  friend bool operator==(const PlantParams&, const PlantParams&) = default;
};

struct ControlLimits {
  double max_tilt_step = 0.05;  // rad per tick
  double max_pan_step = 0.1;    // rad per tick
  double integral_limit = 10.0; // per channel, error units

  void validate() const;
  friend bool operator==(const ControlLimits&, const ControlLimits&) = default;
};

struct ControllerState {
  Vec2 integral{};    // clamped running sum of errors
  Vec2 prev_error{};  // e(k-1); zero before the first step
  VirtualPolar x{};   // shadow state the error is measured against
  LightPose light{};
  std::uint64_t step = 0;
};

struct ControlOutput {
  Vec2 u{};      // (d_tilt, d_pan) after rate limiting
  Vec2 u_raw{};  // before rate limiting
  std::array<bool, 2> saturated{false, false};
};

// One evaluation of the PID law. Advances state.integral (clamped to
// +-integral_limit), state.prev_error and state.step. Throws
// ControllerInputError for non-finite error components.
ControlOutput pid_step(ControllerState& state, Vec2 error, const PidGains& gains,
                       const ControlLimits& limits);

// First-order plant. delta_world is the robot's change in world polar
// coordinates (dr_w, dbeta_w).
Vec2 plant_step(Vec2 x, Vec2 u, Vec2 delta_world, const PlantParams& params);

// Sign of the plant's input matrix diag(-a, b). A larger tilt shortens the
// shadow, so the radial error is negated before it reaches the PID law.
inline constexpr Vec2 kActuationSign{-1.0, 1.0};

// Maps a shadow error (radial m, bearing rad) at the signed virtual polar
// position x to the first-order light-pose change (tilt rad, pan rad) that
// cancels it, for a robot of the given height lighting flat ground.
// Throws DomainError unless tilt is in (0, pi/2) and height > 0.
Mat2 pose_error_resolver(VirtualPolar x, LightPose pose, double height,
                         const FrameConfig& cfg);

struct ControllerConfig {
  PidGains gains{};
  ControlLimits limits{};
  TiltBounds tilt{};
};

struct TickControl {
  Vec2 error{};  // e(k) = P_d(k) - x(k), bearing wrapped to (-pi, pi]
  ControlOutput output;
  LightPose light;  // pose after the update
  bool tilt_clamped = false;
};

// Closed-loop update: records measured as state.x, forms e(k), runs the PID
// on orientation * e(k) and applies u to the light pose (tilt clamped to
// bounds, pan wrapped to [0, 2pi)).
TickControl control_tick(
    VirtualPolar setpoint, VirtualPolar measured, ControllerState& state,
    const ControllerConfig& config,
    const Mat2& orientation = Mat2::diag(kActuationSign.x, kActuationSign.y));

}  // namespace shadowcast

#endif  // SHADOWCAST_CONTROLLER_HPP_
