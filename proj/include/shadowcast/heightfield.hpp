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

#ifndef SHADOWCAST_HEIGHTFIELD_HPP_
#define SHADOWCAST_HEIGHTFIELD_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shadowcast/light.hpp"
#include "shadowcast/vec.hpp"

namespace shadowcast {

// Grid of column heights standing in for a scanned environment. Cell (ix, iy)
// covers [origin.x + ix*cell, origin.x + (ix+1)*cell) x [same in y] and is a
// solid column from z = 0 to its height. Immutable after construction.
class HeightField {
 public:
  // heights is row-major with row 0 at minimum y: index = iy * nx + ix.
  // Throws ValidationError naming the first offending cell.
  HeightField(Vec2 origin, double cell_size, std::size_t nx, std::size_t ny,
              std::vector<double> heights);

  static HeightField flat(Vec2 origin, double cell_size, std::size_t nx,
                          std::size_t ny);

  Vec2 origin() const { return origin_; }
  double cell_size() const { return cell_size_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::span<const double> heights() const { return heights_; }
  Vec2 max_corner() const;

  double height(std::size_t ix, std::size_t iy) const {
    return heights_[iy * nx_ + ix];
  }
  bool contains(Vec2 p) const;
  // Height of the column under p; p must be inside the field.
  double surface_height(Vec2 p) const;

  // Cell index along one axis, clamped to the grid.
  std::size_t cell_x(double x) const;
  std::size_t cell_y(double y) const;

 private:
  Vec2 origin_;
  double cell_size_;
  std::size_t nx_;
  std::size_t ny_;
  std::vector<double> heights_;
};

// JSON document with exactly the keys cell_size, origin ([x, y]), nx, ny and
// heights (nx*ny numbers). Throws ParseError (with line) on malformed text or
// fields, ValidationError on invariant violations.
HeightField parse_heightfield(std::string_view text);
HeightField load_heightfield(const std::filesystem::path& path);
std::string dump_heightfield(const HeightField& field);

enum class SurfaceKind { ground, elevated_top, wall_face };

std::string_view to_string(SurfaceKind kind);
// Throws ParseError for unknown names.
SurfaceKind surface_kind_from_string(std::string_view name);

struct SurfacePoint {
  Vec3 position;
  SurfaceKind kind = SurfaceKind::ground;
  friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
};

// First intersection of the ray with the column surfaces, found by a 2-D DDA
// walk over cells with exact side and top tests per cell. Returns nullopt
// when the ray leaves the field. Throws DomainError if direction is not unit
// length or the origin is inside a column.
std::optional<SurfacePoint> raycast(Vec3 origin, Vec3 direction,
                                    const HeightField& field);

struct ShadowFootprint {
  // xy convex hull of the hits, counter-clockwise, starting at the hit
  // nearest the robot base.
  std::vector<SurfacePoint> outline;
  // Hit of the ray through the robot's top centre.
  SurfacePoint tip;
  // Every per-ray hit in sample order.
  std::vector<SurfacePoint> hits;
};

inline constexpr std::size_t kDefaultSilhouetteSamples = 9;

// Origins of the silhouette rays: top centre first, then ceil((n-1)/2) points
// on the top rim and floor((n-1)/2) on the base rim, spaced evenly in angle
// starting at the pan bearing. base_z is the ground height under the robot.
std::vector<Vec3> silhouette_samples(Vec2 robot, double base_z,
                                     const RobotGeometry& geom, LightPose pose,
                                     std::size_t samples);

// Casts the silhouette rays along the light direction onto the field.
// Samples embedded in a column are skipped. Throws DomainError if the robot
// is outside the field or the pose is degenerate, EmptyFootprint if the tip
// ray (or every ray) leaves the field.
ShadowFootprint project_shadow(Vec2 robot, const RobotGeometry& geom,
                               LightPose pose, const HeightField& field,
                               std::size_t samples = kDefaultSilhouetteSamples);

// Same sampling against the unbounded plane z = 0.
ShadowFootprint project_shadow_flat(
    Vec2 robot, const RobotGeometry& geom, LightPose pose,
    std::size_t samples = kDefaultSilhouetteSamples);

}  // namespace shadowcast

#endif  // SHADOWCAST_HEIGHTFIELD_HPP_
