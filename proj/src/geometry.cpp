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

#include "shadowcast/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shadowcast/errors.hpp"

namespace shadowcast {
namespace {

constexpr double kBoundarySlack = 1e-9;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Unit vectors of the human-centred frame.
struct Basis {
  Vec2 forward;
  Vec2 left;
  Vec2 right;
  Vec2 back;
};

Basis basis_of(const FrameConfig& cfg) {
  const double c = std::cos(cfg.human_facing);
  const double s = std::sin(cfg.human_facing);
  return {{c, s}, {-s, c}, {s, -c}, {-c, -s}};
}

}  // namespace

void FrameConfig::validate() const {
  if (!(std::isfinite(world_radius) && world_radius > 0.0))
    throw DomainError("l_w", "must be > 0, got " + fmt(world_radius));
  if (!(std::isfinite(view_radius) && view_radius > 0.0))
    throw DomainError("l_v", "must be > 0, got " + fmt(view_radius));
  if (!(world_angle > 0.0 && world_angle <= kPi))
    throw DomainError("theta_w", "must be in (0, pi], got " + fmt(world_angle));
  if (!(view_angle > 0.0 && view_angle < world_angle))
    throw DomainError("theta_v",
                      "must be in (0, theta_w), got " + fmt(view_angle));
  if (!is_finite(human_position))
    throw DomainError("human_position", "must be finite");
  if (!std::isfinite(human_facing))
    throw DomainError("human_facing", "must be finite");
}

void validate_world(WorldPolar p, const FrameConfig& cfg) {
  if (!(p.radius >= 0.0 && p.radius <= cfg.world_radius))
    throw DomainError("r_w", "must be in [0, " + fmt(cfg.world_radius) +
                                 "], got " + fmt(p.radius));
  if (!(p.bearing >= 0.0 && p.bearing <= cfg.world_angle))
    throw DomainError("beta_w", "must be in [0, " + fmt(cfg.world_angle) +
                                    "], got " + fmt(p.bearing));
}

void validate_virtual(VirtualPolar p, const FrameConfig& cfg) {
  if (!(p.radius >= 0.0 && p.radius <= cfg.view_radius))
    throw DomainError("r_v", "must be in [0, " + fmt(cfg.view_radius) +
                                 "], got " + fmt(p.radius));
  if (!(p.bearing >= 0.0 && p.bearing <= cfg.view_angle))
    throw DomainError("beta_v", "must be in [0, " + fmt(cfg.view_angle) +
                                    "], got " + fmt(p.bearing));
}

VirtualPolar map_to_virtual(WorldPolar p, const FrameConfig& cfg) {
  validate_world(p, cfg);
  VirtualPolar v{
      cfg.view_radius - p.radius * (cfg.view_radius / cfg.world_radius),
      p.bearing * (cfg.view_angle / cfg.world_angle)};
  // Rounding at the boundaries must not leak outside the sector.
  v.radius = std::clamp(v.radius, 0.0, cfg.view_radius);
  v.bearing = std::clamp(v.bearing, 0.0, cfg.view_angle);
  return v;
}

Vec2 world_polar_to_global(WorldPolar p, const FrameConfig& cfg) {
  validate_world(p, cfg);
  const Basis b = basis_of(cfg);
  const double c = std::cos(p.bearing);
  const double s = std::sin(p.bearing);
  return cfg.human_position + p.radius * (c * b.right + s * b.back);
}

Vec2 virtual_polar_to_global(VirtualPolar p, const FrameConfig& cfg) {
  validate_virtual(p, cfg);
  const Basis b = basis_of(cfg);
  const double off_centre = p.bearing - 0.5 * cfg.view_angle;
  return cfg.human_position +
         p.radius * (std::cos(off_centre) * b.forward +
                     std::sin(off_centre) * b.left);
}

WorldPolar global_to_world_polar(Vec2 p, const FrameConfig& cfg) {
  if (!is_finite(p)) throw DomainError("position", "must be finite");
  const Basis b = basis_of(cfg);
  const Vec2 d = p - cfg.human_position;
  const double along_right = dot(d, b.right);
  double along_back = dot(d, b.back);
  const double r = norm(d);
  if (along_back < -kBoundarySlack)
    throw DomainError("position", "point lies in front of the human");
  if (r > cfg.world_radius + kBoundarySlack)
    throw DomainError("position", "point lies beyond l_w");
  along_back = std::max(along_back, 0.0);
  if (r == 0.0) return {0.0, kPi / 2.0};
  return {std::min(r, cfg.world_radius), std::atan2(along_back, along_right)};
}

VirtualPolar global_to_virtual_polar(Vec2 p, const FrameConfig& cfg) {
  const Basis b = basis_of(cfg);
  const Vec2 d = p - cfg.human_position;
  const double off_centre = std::atan2(dot(d, b.left), dot(d, b.forward));
  return {norm(d), 0.5 * cfg.view_angle + off_centre};
}

VirtualPolar signed_virtual_polar(Vec2 p, const FrameConfig& cfg,
                                  double reference_bearing) {
  const VirtualPolar raw = global_to_virtual_polar(p, cfg);
  const double offset = wrap_to_pi(raw.bearing - reference_bearing);
  if (std::abs(offset) <= kPi / 2.0)
    return {raw.radius, reference_bearing + offset};
  return {-raw.radius, reference_bearing + wrap_to_pi(offset - kPi)};
}

double shadow_robot_distance(WorldPolar robot, VirtualPolar setpoint,
                             const FrameConfig& cfg) {
  return distance(world_polar_to_global(robot, cfg),
                  virtual_polar_to_global(setpoint, cfg));
}

bool in_view_sector(Vec2 p, const FrameConfig& cfg, double tolerance) {
  const Basis b = basis_of(cfg);
  const Vec2 d = p - cfg.human_position;
  const double r = norm(d);
  if (r > cfg.view_radius + tolerance) return false;
  if (r <= tolerance) return true;
  const double off_centre = std::atan2(dot(d, b.left), dot(d, b.forward));
  const double excess = std::abs(off_centre) - 0.5 * cfg.view_angle;
  if (excess <= 0.0) return true;
  const double lateral = excess < kPi / 2.0 ? r * std::sin(excess) : r;
  return lateral <= tolerance;
}

RearClamp clamp_to_rear_half_disk(Vec2 p, const FrameConfig& cfg) {
  const Basis b = basis_of(cfg);
  const Vec2 d = p - cfg.human_position;
  double along_right = dot(d, b.right);
  double along_back = dot(d, b.back);
  bool clamped = false;

  if (along_back < 0.0) {
    clamped = along_back < -kBoundarySlack;
    along_back = 0.0;
    if (std::abs(along_right) > cfg.world_radius) {
      clamped = true;
      along_right = std::copysign(cfg.world_radius, along_right);
    }
  }
  double r = std::hypot(along_right, along_back);
  if (r > cfg.world_radius) {
    clamped = clamped || r > cfg.world_radius + kBoundarySlack;
    r = cfg.world_radius;
  }

  double bearing = r == 0.0 ? kPi / 2.0 : std::atan2(along_back, along_right);
  if (bearing > cfg.world_angle) {
    clamped = clamped || bearing > cfg.world_angle + kBoundarySlack;
    bearing = cfg.world_angle;
  }

  RearClamp out;
  out.clamped = clamped;
  out.position = {r, bearing};
  out.global = world_polar_to_global(out.position, cfg);
  return out;
}

}  // namespace shadowcast
