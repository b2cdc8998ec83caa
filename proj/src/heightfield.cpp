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

#include "shadowcast/heightfield.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shadowcast/errors.hpp"

namespace shadowcast {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();
// Allowed deviation from |direction| = 1.
constexpr double kUnitSlack = 1e-9;
// Vertical slack for "origin inside a column" and "entered below the top".
constexpr double kHeightSlack = 1e-12;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

double require_number(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ParseError(std::string(key) + ": expected a number");
  return v.get<double>();
}

std::size_t require_count(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw ParseError(std::string(key) + ": expected a positive integer");
  return v.get<std::size_t>();
}

double cross(Vec2 o, Vec2 a, Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain over the xy of the hits; collinear points dropped.
std::vector<SurfacePoint> hull_of(const std::vector<SurfacePoint>& hits,
                                  Vec2 base) {
  std::vector<SurfacePoint> pts;
  for (const SurfacePoint& h : hits) {
    const bool seen = std::any_of(pts.begin(), pts.end(), [&](const auto& p) {
      return p.position.x == h.position.x && p.position.y == h.position.y;
    });
    if (!seen) pts.push_back(h);
  }
  if (pts.size() <= 2) {
    std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
      return distance(xy(a.position), base) < distance(xy(b.position), base);
    });
    return pts;
  }
  std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.position.x < b.position.x ||
           (a.position.x == b.position.x && a.position.y < b.position.y);
  });
  std::vector<SurfacePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(xy(hull[k - 2].position), xy(hull[k - 1].position),
                           xy(p.position)) <= 0.0)
      --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= lower && cross(xy(hull[k - 2].position),
                               xy(hull[k - 1].position), xy(p.position)) <= 0.0)
      --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() < 2) {  // all collinear: keep the two extremes
    hull = {pts.front(), pts.back()};
  }
  const auto nearest = std::min_element(
      hull.begin(), hull.end(), [&](const auto& a, const auto& b) {
        return distance(xy(a.position), base) < distance(xy(b.position), base);
      });
  std::rotate(hull.begin(), nearest, hull.end());
  return hull;
}

}  // namespace

HeightField::HeightField(Vec2 origin, double cell_size, std::size_t nx,
                         std::size_t ny, std::vector<double> heights)
    : origin_(origin),
      cell_size_(cell_size),
      nx_(nx),
      ny_(ny),
      heights_(std::move(heights)) {
  if (!is_finite(origin_)) throw ValidationError("origin: must be finite");
  if (!(std::isfinite(cell_size_) && cell_size_ > 0.0))
    throw ValidationError("cell_size: must be > 0");
  if (nx_ == 0 || ny_ == 0) throw ValidationError("nx, ny: must be positive");
  if (heights_.size() != nx_ * ny_) {
    throw ValidationError("heights: expected " + std::to_string(nx_ * ny_) +
                          " values (nx*ny), got " +
                          std::to_string(heights_.size()));
  }
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    const double h = heights_[i];
    if (!(std::isfinite(h) && h >= 0.0)) {
      std::ostringstream os;
      os << "heights: cell (ix=" << i % nx_ << ", iy=" << i / nx_
         << ") must be finite and >= 0, got " << h;
      throw ValidationError(os.str());
    }
  }
}

HeightField HeightField::flat(Vec2 origin, double cell_size, std::size_t nx,
                              std::size_t ny) {
  return HeightField(origin, cell_size, nx, ny,
                     std::vector<double>(nx * ny, 0.0));
}

Vec2 HeightField::max_corner() const {
  return {origin_.x + static_cast<double>(nx_) * cell_size_,
          origin_.y + static_cast<double>(ny_) * cell_size_};
}

bool HeightField::contains(Vec2 p) const {
  const Vec2 hi = max_corner();
  return p.x >= origin_.x && p.x <= hi.x && p.y >= origin_.y && p.y <= hi.y;
}

std::size_t HeightField::cell_x(double x) const {
  const double c = std::floor((x - origin_.x) / cell_size_);
  if (!(c > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(c), nx_ - 1);
}

std::size_t HeightField::cell_y(double y) const {
  const double c = std::floor((y - origin_.y) / cell_size_);
  if (!(c > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(c), ny_ - 1);
}

double HeightField::surface_height(Vec2 p) const {
  return height(cell_x(p.x), cell_y(p.y));
}

HeightField parse_heightfield(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("height field: " + std::string(e.what()),
                     line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw ParseError("height field: expected an object", 1);

  static const std::set<std::string> kKeys = {"cell_size", "origin", "nx", "ny",
                                              "heights"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.contains(key)) throw ParseError("unknown key '" + key + "'");
  }
  for (const auto& key : kKeys) {
    if (!doc.contains(key)) throw ParseError("missing key '" + key + "'");
  }

  const double cell = require_number(doc, "cell_size");
  const json& origin = doc.at("origin");
  if (!origin.is_array() || origin.size() != 2 || !origin[0].is_number() ||
      !origin[1].is_number())
    throw ParseError("origin: expected two numbers");
  const std::size_t nx = require_count(doc, "nx");
  const std::size_t ny = require_count(doc, "ny");
  const json& values = doc.at("heights");
  if (!values.is_array()) throw ParseError("heights: expected an array");
  if (values.size() != nx * ny) {
    throw ParseError("heights: declared " + std::to_string(nx) + "x" +
                     std::to_string(ny) + " grid but found " +
                     std::to_string(values.size()) + " values");
  }
  std::vector<double> heights;
  heights.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_number())
      throw ParseError("heights[" + std::to_string(i) + "]: expected a number");
    heights.push_back(values[i].get<double>());
  }
  return HeightField({origin[0].get<double>(), origin[1].get<double>()}, cell,
                     nx, ny, std::move(heights));
}

HeightField load_heightfield(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open height field " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  try {
    return parse_heightfield(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

std::string dump_heightfield(const HeightField& field) {
  json doc;
  doc["cell_size"] = field.cell_size();
  doc["origin"] = {field.origin().x, field.origin().y};
  doc["nx"] = field.nx();
  doc["ny"] = field.ny();
  doc["heights"] = std::vector<double>(field.heights().begin(),
                                       field.heights().end());
  return doc.dump();
}

std::string_view to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::ground: return "ground";
    case SurfaceKind::elevated_top: return "elevated_top";
    case SurfaceKind::wall_face: return "wall_face";
  }
  return "ground";
}

SurfaceKind surface_kind_from_string(std::string_view name) {
  if (name == "ground") return SurfaceKind::ground;
  if (name == "elevated_top") return SurfaceKind::elevated_top;
  if (name == "wall_face") return SurfaceKind::wall_face;
  throw ParseError("unknown surface kind '" + std::string(name) + "'");
}

std::optional<SurfacePoint> raycast(Vec3 origin, Vec3 direction,
                                    const HeightField& field) {
  if (!(std::abs(norm(direction) - 1.0) <= kUnitSlack))
    throw DomainError("direction", "must be a unit vector");

  const Vec2 lo = field.origin();
  const Vec2 hi = field.max_corner();
  const double cell = field.cell_size();

  // Clip the ray against the field's xy box.
  double t_min = 0.0;
  double t_max = kInf;
  int entry_axis = -1;
  const double o[2] = {origin.x, origin.y};
  const double d[2] = {direction.x, direction.y};
  const double box_lo[2] = {lo.x, lo.y};
  const double box_hi[2] = {hi.x, hi.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (o[axis] < box_lo[axis] || o[axis] > box_hi[axis]) return std::nullopt;
      continue;
    }
    double t0 = (box_lo[axis] - o[axis]) / d[axis];
    double t1 = (box_hi[axis] - o[axis]) / d[axis];
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > t_min) {
      t_min = t0;
      entry_axis = axis;
    }
    t_max = std::min(t_max, t1);
  }
  if (t_min > t_max) return std::nullopt;

  const bool starts_inside = t_min == 0.0;
  const auto at = [&](double t) { return origin + t * direction; };

  Vec3 p = at(t_min);
  std::size_t ix = field.cell_x(p.x);
  std::size_t iy = field.cell_y(p.y);
  // On an interior boundary while moving backwards, the segment belongs to
  // the lower cell.
  if (d[0] < 0.0 && ix > 0 &&
      p.x == lo.x + static_cast<double>(ix) * cell)
    --ix;
  if (d[1] < 0.0 && iy > 0 &&
      p.y == lo.y + static_cast<double>(iy) * cell)
    --iy;

  if (starts_inside && origin.z < field.height(ix, iy) - kHeightSlack)
    throw DomainError("origin", "lies below the local surface");

  const int step_x = d[0] > 0.0 ? 1 : -1;
  const int step_y = d[1] > 0.0 ? 1 : -1;
  double t_enter = t_min;
  bool check_side = !starts_inside;
  int crossed_axis = entry_axis;  // axis of the face we entered through

  for (;;) {
    const double top = field.height(ix, iy);
    if (check_side && origin.z + direction.z * t_enter < top - kHeightSlack) {
      Vec3 hit = at(t_enter);
      if (crossed_axis == 0) {
        hit.x = lo.x + static_cast<double>(step_x > 0 ? ix : ix + 1) * cell;
      } else if (crossed_axis == 1) {
        hit.y = lo.y + static_cast<double>(step_y > 0 ? iy : iy + 1) * cell;
      }
      return SurfacePoint{hit, SurfaceKind::wall_face};
    }

    const double tx =
        d[0] == 0.0
            ? kInf
            : (lo.x + static_cast<double>(step_x > 0 ? ix + 1 : ix) * cell -
               o[0]) / d[0];
    const double ty =
        d[1] == 0.0
            ? kInf
            : (lo.y + static_cast<double>(step_y > 0 ? iy + 1 : iy) * cell -
               o[1]) / d[1];
    const double t_exit = std::min(tx, ty);

    if (direction.z < 0.0) {
      const double t_top = (top - origin.z) / direction.z;
      if (t_top <= t_exit) {
        Vec3 hit = at(std::max(t_top, t_enter));
        hit.z = top;
        return SurfacePoint{hit, top == 0.0 ? SurfaceKind::ground
                                            : SurfaceKind::elevated_top};
      }
    }
    if (t_exit == kInf) return std::nullopt;

    if (tx <= ty) {
      if ((step_x > 0 && ix + 1 >= field.nx()) || (step_x < 0 && ix == 0))
        return std::nullopt;
      ix += step_x;
      crossed_axis = 0;
    }
    if (ty <= tx) {
      if ((step_y > 0 && iy + 1 >= field.ny()) || (step_y < 0 && iy == 0))
        return std::nullopt;
      iy += step_y;
      crossed_axis = 1;
    }
    t_enter = t_exit;
    check_side = true;
  }
}

std::vector<Vec3> silhouette_samples(Vec2 robot, double base_z,
                                     const RobotGeometry& geom, LightPose pose,
                                     std::size_t samples) {
  if (samples == 0) throw DomainError("samples", "must be >= 1");
  const std::size_t rim = samples - 1;
  const std::size_t top_rim = (rim + 1) / 2;
  const std::size_t base_rim = rim / 2;
  const double top_z = base_z + geom.height;

  std::vector<Vec3> out;
  out.reserve(samples);
  out.push_back({robot.x, robot.y, top_z});
  const auto ring = [&](std::size_t count, double z) {
    for (std::size_t i = 0; i < count; ++i) {
      const double a = pose.pan + kTwoPi * static_cast<double>(i) /
                                      static_cast<double>(count);
      out.push_back({robot.x + geom.footprint_radius * std::cos(a),
                     robot.y + geom.footprint_radius * std::sin(a), z});
    }
  };
  ring(top_rim, top_z);
  ring(base_rim, base_z);
  return out;
}

ShadowFootprint project_shadow(Vec2 robot, const RobotGeometry& geom,
                               LightPose pose, const HeightField& field,
                               std::size_t samples) {
  geom.validate();
  if (!(pose.tilt > 0.0 && pose.tilt < kPi / 2.0))
    throw DomainError("tilt", "must be in (0, pi/2)");
  if (!field.contains(robot))
    throw DomainError("robot", "lies outside the height field");

  const Vec3 dir = light_direction(pose);
  const double base_z = field.surface_height(robot);
  const std::vector<Vec3> origins =
      silhouette_samples(robot, base_z, geom, pose, samples);

  ShadowFootprint fp;
  bool have_tip = false;
  for (std::size_t i = 0; i < origins.size(); ++i) {
    const Vec3 o = origins[i];
    if (field.contains(xy(o)) &&
        o.z < field.surface_height(xy(o)) - kHeightSlack)
      continue;  // sample embedded in a neighbouring column
    const auto hit = raycast(o, dir, field);
    if (!hit) continue;
    if (i == 0) {
      fp.tip = *hit;
      have_tip = true;
    }
    fp.hits.push_back(*hit);
  }
  if (fp.hits.empty()) throw EmptyFootprint("every silhouette ray left the field");
  if (!have_tip) throw EmptyFootprint("tip ray left the field");
  fp.outline = hull_of(fp.hits, robot);
  return fp;
}

ShadowFootprint project_shadow_flat(Vec2 robot, const RobotGeometry& geom,
                                    LightPose pose, std::size_t samples) {
  geom.validate();
  if (!(pose.tilt > 0.0 && pose.tilt < kPi / 2.0))
    throw DomainError("tilt", "must be in (0, pi/2)");
  const Vec3 dir = light_direction(pose);
  ShadowFootprint fp;
  for (const Vec3& o : silhouette_samples(robot, 0.0, geom, pose, samples)) {
    Vec3 hit = o + (o.z / -dir.z) * dir;
    hit.z = 0.0;
    fp.hits.push_back({hit, SurfaceKind::ground});
  }
  fp.tip = fp.hits.front();
  fp.outline = hull_of(fp.hits, robot);
  return fp;
}

}  // namespace shadowcast
