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

#include "shadowcast/light.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shadowcast/errors.hpp"

namespace shadowcast {

void TiltBounds::validate() const {
  if (!(min > 0.0 && max < kPi / 2.0 && min < max))
    throw DomainError("tilt_bounds", "need 0 < min < max < pi/2");
}

double TiltBounds::clamp(double tilt) const { return std::clamp(tilt, min, max); }

void RobotGeometry::validate() const {
  if (!(std::isfinite(height) && height > 0.0))
    throw DomainError("height", "must be > 0");
  if (!(std::isfinite(footprint_radius) && footprint_radius >= 0.0))
    throw DomainError("footprint_radius", "must be >= 0");
}

double compute_tilt(double height, double distance) {
  if (!(std::isfinite(height) && height > 0.0))
    throw DomainError("h", "must be > 0");
  if (!(std::isfinite(distance) && distance >= 0.0))
    throw DomainError("d", "must be >= 0");
  if (distance == 0.0)
    throw DegenerateGeometry("shadow tip coincides with the robot base");
  return std::atan(height / distance);
}

double compute_pan(Vec2 robot, Vec2 target) {
  const Vec2 d = target - robot;
  if (d.x == 0.0 && d.y == 0.0)
    throw DegenerateGeometry("pan undefined for coincident points");
  return wrap_to_two_pi(std::atan2(d.y, d.x));
}

LightSolution compute_light_pose(WorldPolar robot, const RobotGeometry& geom,
                                 const FrameConfig& cfg,
                                 const TiltBounds& bounds) {
  geom.validate();
  const VirtualPolar setpoint = map_to_virtual(robot, cfg);
  const Vec2 base = world_polar_to_global(robot, cfg);
  const Vec2 target = virtual_polar_to_global(setpoint, cfg);
  const double d = distance(base, target);

  if (d == 0.0) {
    return {{bounds.max, wrap_to_two_pi(cfg.human_facing)}, true};
  }
  const double tilt = compute_tilt(geom.height, d);
  const double clamped = bounds.clamp(tilt);
  return {{clamped, compute_pan(base, target)}, clamped != tilt};
}

Vec2 forward_project_flat(Vec2 robot, double height, LightPose pose) {
  if (!(pose.tilt > 0.0 && pose.tilt < kPi / 2.0))
    throw DomainError("tilt", "must be in (0, pi/2)");
  const double length = height / std::tan(pose.tilt);
  return robot + length * Vec2{std::cos(pose.pan), std::sin(pose.pan)};
}

Vec3 light_direction(LightPose pose) {
  const double horizontal = std::cos(pose.tilt);
  return {std::cos(pose.pan) * horizontal, std::sin(pose.pan) * horizontal,
          -std::sin(pose.tilt)};
}

}  // namespace shadowcast
