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

#include "shadowcast/controller.hpp"

#include <algorithm>
#include <cmath>

#include "shadowcast/errors.hpp"

namespace shadowcast {

void PlantParams::validate() const {
  for (double v : {a, b, f, g}) {
    if (!(std::isfinite(v) && v > 0.0))
      throw DomainError("plant", "a, b, f, g must be positive");
  }
}

void ControlLimits::validate() const {
  if (!(max_tilt_step > 0.0 && max_pan_step > 0.0))
    throw DomainError("limits", "rate limits must be positive");
  if (!(integral_limit > 0.0))
    throw DomainError("integral_limit", "must be positive");
}

ControlOutput pid_step(ControllerState& state, Vec2 error, const PidGains& gains,
                       const ControlLimits& limits) {
  if (!is_finite(error))
    throw ControllerInputError("controller error must be finite");

  const double lim = limits.integral_limit;
  state.integral = {std::clamp(state.integral.x + error.x, -lim, lim),
                    std::clamp(state.integral.y + error.y, -lim, lim)};

  ControlOutput out;
  out.u_raw = gains.kp * error + gains.ki * state.integral +
              gains.kd * (error - state.prev_error);
  out.u = {std::clamp(out.u_raw.x, -limits.max_tilt_step, limits.max_tilt_step),
           std::clamp(out.u_raw.y, -limits.max_pan_step, limits.max_pan_step)};
  out.saturated = {out.u.x != out.u_raw.x, out.u.y != out.u_raw.y};

  state.prev_error = error;
  ++state.step;
  return out;
}

Vec2 plant_step(Vec2 x, Vec2 u, Vec2 delta_world, const PlantParams& params) {
  if (!is_finite(x) || !is_finite(u) || !is_finite(delta_world))
    throw DomainError("plant", "inputs must be finite");
  return {x.x - params.a * u.x - params.f * delta_world.x,
          x.y + params.b * u.y + params.g * delta_world.y};
}

Mat2 pose_error_resolver(VirtualPolar x, LightPose pose, double height,
                         const FrameConfig& cfg) {
  if (!(pose.tilt > 0.0 && pose.tilt < kPi / 2.0))
    throw DomainError("tilt", "must be in (0, pi/2)");
  if (!(height > 0.0)) throw DomainError("height", "must be positive");
  const double length = height / std::tan(pose.tilt);
  const double s = std::sin(pose.tilt);
  const double slope = -height / (s * s);
  const double delta =
      cfg.human_facing + x.bearing - 0.5 * cfg.view_angle - pose.pan;
  const double c = std::cos(delta);
  const double n = std::sin(delta);
  return Mat2{{{{c / slope, -x.radius * n / slope},
                {n / length, x.radius * c / length}}}};
}

TickControl control_tick(VirtualPolar setpoint, VirtualPolar measured,
                         ControllerState& state, const ControllerConfig& config,
                         const Mat2& orientation) {
  TickControl out;
  out.error = {setpoint.radius - measured.radius,
               wrap_to_pi(setpoint.bearing - measured.bearing)};
  state.x = measured;
  out.output =
      pid_step(state, orientation * out.error, config.gains, config.limits);

  const double tilt = state.light.tilt + out.output.u.x;
  out.light.tilt = config.tilt.clamp(tilt);
  out.light.pan = wrap_to_two_pi(state.light.pan + out.output.u.y);
  out.tilt_clamped = out.light.tilt != tilt;
  state.light = out.light;
  return out;
}

}  // namespace shadowcast
