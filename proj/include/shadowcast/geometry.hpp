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

#ifndef SHADOWCAST_GEOMETRY_HPP_
#define SHADOWCAST_GEOMETRY_HPP_

#include "shadowcast/vec.hpp"

namespace shadowcast {

// Polar position of the robot in the real-world half-disk behind the human.
// bearing is measured from the human's right-hand direction, sweeping through
// the rear half-plane (0 = right, pi = left).
struct WorldPolar {
  double radius = 0.0;   // r_w, meters
  double bearing = 0.0;  // beta_w, radians
  friend constexpr bool operator==(WorldPolar, WorldPolar) = default;
};

// Polar position inside the view sector in front of the human. bearing is
// measured from the right sector boundary toward the left one.
struct VirtualPolar {
  double radius = 0.0;   // r_v, meters
  double bearing = 0.0;  // beta_v, radians
  friend constexpr bool operator==(VirtualPolar, VirtualPolar) = default;
};

// Geometry of the two worlds around a static human.
struct FrameConfig {
  double world_radius = 10.0;             // l_w
  double world_angle = kPi;               // theta_w
  double view_radius = 5.0;               // l_v
  double view_angle = deg_to_rad(34.0);   // theta_v
  Vec2 human_position{};
  double human_facing = kPi / 2.0;        // global heading of the sector centerline

  // Throws DomainError naming the first invalid field.
  void validate() const;
};

// Throws DomainError ("r_w" / "beta_w") when p is outside the half-disk.
void validate_world(WorldPolar p, const FrameConfig& cfg);
// Throws DomainError ("r_v" / "beta_v") when p is outside the sector.
void validate_virtual(VirtualPolar p, const FrameConfig& cfg);

// Linear shadow mapping: r_v = l_v - r_w * (l_v / l_w),
// beta_v = beta_w * (theta_v / theta_w).
VirtualPolar map_to_virtual(WorldPolar p, const FrameConfig& cfg);

Vec2 world_polar_to_global(WorldPolar p, const FrameConfig& cfg);
Vec2 virtual_polar_to_global(VirtualPolar p, const FrameConfig& cfg);

// Inverse of world_polar_to_global. Throws DomainError if the point is not
// in the closed rear half-disk (1e-9 slack on the diameter line and rim).
// The origin maps to bearing pi/2.
WorldPolar global_to_world_polar(Vec2 p, const FrameConfig& cfg);

// Virtual-polar coordinates of an arbitrary point, not restricted to the
// sector. bearing = theta_v/2 + signed angle from the centerline, so the
// (-pi, pi] seam lies directly behind the human.
VirtualPolar global_to_virtual_polar(Vec2 p, const FrameConfig& cfg);

// Same point in signed polar form: (r, b) when b is within pi/2 of
// reference_bearing, otherwise (-r, b - pi) with the bearing taken near the
// reference. Along the reference ray the radius is a signed coordinate that
// passes smoothly through the apex.
VirtualPolar signed_virtual_polar(Vec2 p, const FrameConfig& cfg,
                                  double reference_bearing);

// Planar distance between the robot and its shadow setpoint (meters).
double shadow_robot_distance(WorldPolar robot, VirtualPolar setpoint,
                             const FrameConfig& cfg);

// Distance tolerance used for sector containment (meters).
inline constexpr double kContainmentTolerance = 1e-6;

// True when p lies inside the view sector, allowing `tolerance` meters of
// overshoot past the rim or either boundary ray.
bool in_view_sector(Vec2 p, const FrameConfig& cfg,
                    double tolerance = kContainmentTolerance);

struct RearClamp {
  WorldPolar position;
  Vec2 global;
  bool clamped = false;
};

// Nearest point of the closed rear half-disk to p.
RearClamp clamp_to_rear_half_disk(Vec2 p, const FrameConfig& cfg);

}  // namespace shadowcast

#endif  // SHADOWCAST_GEOMETRY_HPP_
