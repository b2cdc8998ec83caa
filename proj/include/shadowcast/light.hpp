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

#ifndef SHADOWCAST_LIGHT_HPP_
#define SHADOWCAST_LIGHT_HPP_

#include "shadowcast/geometry.hpp"
#include "shadowcast/vec.hpp"

namespace shadowcast {

// Pose of the directional light. tilt is the elevation above the horizon;
// pan is the planar bearing the shadow is cast toward.
struct LightPose {
  double tilt = 0.0;  // alpha, radians
  double pan = 0.0;   // gamma, radians in [0, 2pi)
  friend constexpr bool operator==(LightPose, LightPose) = default;
};

// Saturation bounds applied to every tilt the system commands.
struct TiltBounds {
  double min = deg_to_rad(2.0);
  double max = deg_to_rad(85.0);

  void validate() const;
  double clamp(double tilt) const;
};

struct RobotGeometry {
  double height = 1.5;            // h, meters
  double footprint_radius = 0.3;  // silhouette half-width, meters

  void validate() const;
};

// alpha = atan(h / d). Throws DegenerateGeometry for d == 0 and
// DomainError for h <= 0 or d < 0.
double compute_tilt(double height, double distance);

// Bearing of the vector robot -> target, in [0, 2pi). Throws
// DegenerateGeometry for coincident points.
double compute_pan(Vec2 robot, Vec2 target);

struct LightSolution {
  LightPose pose;
  bool clamped = false;  // tilt hit a saturation bound
};

// Exact light pose that puts the shadow tip on the mapped setpoint on flat
// ground. Zero shadow-robot distance yields tilt = bounds.max, pan =
// human_facing, clamped.
LightSolution compute_light_pose(WorldPolar robot, const RobotGeometry& geom,
                                 const FrameConfig& cfg,
                                 const TiltBounds& bounds = {});

// Shadow tip of a robot of height h standing on the plane z = 0:
// robot + (h / tan(tilt)) * (cos pan, sin pan). Throws DomainError unless
// 0 < tilt < pi/2.
Vec2 forward_project_flat(Vec2 robot, double height, LightPose pose);

// Unit propagation direction of the light rays.
Vec3 light_direction(LightPose pose);

}  // namespace shadowcast

#endif  // SHADOWCAST_LIGHT_HPP_
