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

#include "shadowcast/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <iterator>

#include "shadowcast/errors.hpp"

namespace shadowcast {
namespace {

using nlohmann::json;

// Typed, path-aware view of one JSON object with a closed key set.
class Fields {
 public:
  Fields(const json& doc, std::string path,
         std::initializer_list<std::string_view> allowed)
      : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw ParseError(where() + "expected an object");
    for (const auto& [key, value] : doc_.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw ParseError(where() + "unknown key '" + key + "'");
    }
  }

  bool has(const char* key) const {
    return doc_.contains(key) && !doc_.at(key).is_null();
  }
  const json& at(const char* key) const {
    if (!has(key)) throw ParseError(where() + "missing key '" + key + "'");
    return doc_.at(key);
  }
  std::string path(const char* key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  double number(const char* key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ParseError(path(key) + ": expected a number");
    return v.get<double>();
  }
  double number_or(const char* key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }
  std::string text(const char* key) const {
    const json& v = at(key);
    if (!v.is_string()) throw ParseError(path(key) + ": expected a string");
    return v.get<std::string>();
  }

 private:
  std::string where() const { return path_.empty() ? "" : path_ + ": "; }

  const json& doc_;
  std::string path_;
};

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

Vec2 read_point(const json& v, const std::string& path, const FrameConfig& frame) {
  if (v.is_array()) {
    if (v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ParseError(path + ": expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
  }
  const Fields f(v, path, {"r", "bearing_deg"});
  const WorldPolar p{f.number("r"), deg_to_rad(f.number("bearing_deg"))};
  try {
    return world_polar_to_global(p, frame);
  } catch (const DomainError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Mat2 read_matrix(const json& v, const std::string& path) {
  const auto bad = [&] { return ParseError(path + ": expected [[a, b], [c, d]]"); };
  if (!v.is_array() || v.size() != 2) throw bad();
  Mat2 m;
  for (std::size_t r = 0; r < 2; ++r) {
    if (!v[r].is_array() || v[r].size() != 2) throw bad();
    for (std::size_t c = 0; c < 2; ++c) {
      if (!v[r][c].is_number()) throw bad();
      m.m[r][c] = v[r][c].get<double>();
    }
  }
  return m;
}

json matrix_json(const Mat2& m) {
  return json::array({json::array({m.m[0][0], m.m[0][1]}),
                      json::array({m.m[1][0], m.m[1][1]})});
}

Motion read_motion(const json& v, const FrameConfig& frame) {
  const std::string type = [&] {
    if (!v.is_object() || !v.contains("type") || !v.at("type").is_string())
      throw ParseError("motion.type: expected a string");
    return v.at("type").get<std::string>();
  }();

  if (type == "stationary") {
    const Fields f(v, "motion", {"type", "position"});
    return StationaryMotion{read_point(f.at("position"), "motion.position", frame)};
  }
  if (type == "waypoints") {
    const Fields f(v, "motion", {"type", "points", "speed"});
    const json& pts = f.at("points");
    if (!pts.is_array()) throw ParseError("motion.points: expected an array");
    WaypointMotion m;
    m.speed = f.number("speed");
    for (std::size_t i = 0; i < pts.size(); ++i)
      m.points.push_back(
          read_point(pts[i], "motion.points[" + std::to_string(i) + "]", frame));
    return m;
  }
  if (type == "orbit") {
    const Fields f(v, "motion", {"type", "radius", "from_deg", "to_deg", "speed"});
    return OrbitMotion{f.number("radius"), deg_to_rad(f.number("from_deg")),
                       deg_to_rad(f.number("to_deg")), f.number("speed")};
  }
  if (type == "unicycle") {
    const Fields f(v, "motion", {"type", "start", "heading_deg", "speed"});
    return UnicycleMotion{read_point(f.at("start"), "motion.start", frame),
                          deg_to_rad(f.number("heading_deg")), f.number("speed")};
  }
  throw ParseError("motion.type: unknown motion '" + type + "'");
}

json point_json(Vec2 p) { return json::array({p.x, p.y}); }

}  // namespace

std::string_view to_string(ControlMode mode) {
  return mode == ControlMode::direct ? "direct" : "pid";
}

std::string_view to_string(PlantMode mode) {
  return mode == PlantMode::model ? "model" : "geometric";
}

ControlMode control_mode_from_string(std::string_view name) {
  if (name == "direct") return ControlMode::direct;
  if (name == "pid") return ControlMode::pid;
  throw ParseError("unknown control mode '" + std::string(name) + "'");
}

PlantMode plant_mode_from_string(std::string_view name) {
  if (name == "geometric") return PlantMode::geometric;
  if (name == "model") return PlantMode::model;
  throw ParseError("unknown plant mode '" + std::string(name) + "'");
}

Scenario scenario_from_json(const json& doc, const std::filesystem::path& base_dir) {
  const Fields top(doc, "",
                   {"v", "name", "frame", "robot", "environment", "tick_rate",
                    "duration_s", "motion", "control", "plant", "gains",
                    "plant_params", "limits", "tilt_bounds_deg", "initial_light",
                    "shadow_samples", "measurement_noise", "seed",
                    "tracking_error_bound"});
  if (top.has("v") && top.number("v") != kScenarioVersion)
    throw ParseError("v: unsupported scenario version");

  Scenario s;
  if (top.has("name")) s.name = top.text("name");

  if (top.has("frame")) {
    const Fields f(top.at("frame"), "frame",
                   {"world_radius", "world_angle_deg", "view_radius",
                    "view_angle_deg", "human_position", "human_facing_deg"});
    s.frame.world_radius = f.number_or("world_radius", s.frame.world_radius);
    if (f.has("world_angle_deg"))
      s.frame.world_angle = deg_to_rad(f.number("world_angle_deg"));
    s.frame.view_radius = f.number_or("view_radius", s.frame.view_radius);
    if (f.has("view_angle_deg"))
      s.frame.view_angle = deg_to_rad(f.number("view_angle_deg"));
    if (f.has("human_position")) {
      const json& p = f.at("human_position");
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw ParseError("frame.human_position: expected [x, y]");
      s.frame.human_position = {p[0].get<double>(), p[1].get<double>()};
    }
    if (f.has("human_facing_deg"))
      s.frame.human_facing = deg_to_rad(f.number("human_facing_deg"));
  }
  try {
    s.frame.validate();
  } catch (const DomainError& e) {
    throw ValidationError(std::string("frame.") + e.what());
  }

  if (top.has("robot")) {
    const Fields f(top.at("robot"), "robot", {"height", "footprint_radius"});
    s.robot.height = f.number_or("height", s.robot.height);
    s.robot.footprint_radius =
        f.number_or("footprint_radius", s.robot.footprint_radius);
  }
  if (top.has("environment")) {
    std::filesystem::path env = top.text("environment");
    s.environment = env.is_relative() && !base_dir.empty() ? base_dir / env : env;
  }
  s.tick_rate = top.number_or("tick_rate", s.tick_rate);
  if (top.has("duration_s")) s.duration = top.number("duration_s");
  s.motion = read_motion(top.at("motion"), s.frame);
  if (top.has("control")) s.control = control_mode_from_string(top.text("control"));
  if (top.has("plant")) s.plant = plant_mode_from_string(top.text("plant"));

  if (top.has("gains")) {
    const Fields f(top.at("gains"), "gains", {"kp", "ki", "kd"});
    PidGains g = s.effective_gains();
    if (f.has("kp")) g.kp = read_matrix(f.at("kp"), "gains.kp");
    if (f.has("ki")) g.ki = read_matrix(f.at("ki"), "gains.ki");
    if (f.has("kd")) g.kd = read_matrix(f.at("kd"), "gains.kd");
    s.gains = g;
  }
  if (top.has("plant_params")) {
    const Fields f(top.at("plant_params"), "plant_params", {"a", "b", "f", "g"});
    s.plant_params = {f.number_or("a", 1.0), f.number_or("b", 1.0),
                      f.number_or("f", 1.0), f.number_or("g", 1.0)};
  }
  if (top.has("limits")) {
    const Fields f(top.at("limits"), "limits",
                   {"max_tilt_step_deg", "max_pan_step_deg", "integral_limit"});
    if (f.has("max_tilt_step_deg"))
      s.limits.max_tilt_step = deg_to_rad(f.number("max_tilt_step_deg"));
    if (f.has("max_pan_step_deg"))
      s.limits.max_pan_step = deg_to_rad(f.number("max_pan_step_deg"));
    s.limits.integral_limit = f.number_or("integral_limit", s.limits.integral_limit);
  }
  if (top.has("tilt_bounds_deg")) {
    const json& b = top.at("tilt_bounds_deg");
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
      throw ParseError("tilt_bounds_deg: expected [min, max]");
    s.tilt = {deg_to_rad(b[0].get<double>()), deg_to_rad(b[1].get<double>())};
  }
  if (top.has("initial_light")) {
    const Fields f(top.at("initial_light"), "initial_light", {"tilt_deg", "pan_deg"});
    s.initial_light = LightPose{deg_to_rad(f.number("tilt_deg")),
                                deg_to_rad(f.number("pan_deg"))};
  }
  if (top.has("shadow_samples")) {
    const json& n = top.at("shadow_samples");
    if (!n.is_number_integer() || n.get<long long>() < 1)
      throw ParseError("shadow_samples: expected a positive integer");
    s.shadow_samples = n.get<std::size_t>();
  }
  if (top.has("measurement_noise")) {
    const Fields f(top.at("measurement_noise"), "measurement_noise",
                   {"radial_m", "bearing_deg"});
    s.noise_radial = f.number_or("radial_m", 0.0);
    s.noise_bearing = deg_to_rad(f.number_or("bearing_deg", 0.0));
  }
  if (top.has("seed")) {
    const json& n = top.at("seed");
    if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<long long>() >= 0))
      throw ParseError("seed: expected a non-negative integer");
    s.seed = n.get<std::uint64_t>();
  }
  if (top.has("tracking_error_bound"))
    s.tracking_error_bound = top.number("tracking_error_bound");

  s.validate();
  return s;
}

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("scenario: " + std::string(e.what()),
                     line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  return scenario_from_json(doc, base_dir);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  try {
    return parse_scenario(text, path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["v"] = kScenarioVersion;
  doc["name"] = s.name;
  doc["frame"] = {{"world_radius", s.frame.world_radius},
                  {"world_angle_deg", rad_to_deg(s.frame.world_angle)},
                  {"view_radius", s.frame.view_radius},
                  {"view_angle_deg", rad_to_deg(s.frame.view_angle)},
                  {"human_position", point_json(s.frame.human_position)},
                  {"human_facing_deg", rad_to_deg(s.frame.human_facing)}};
  doc["robot"] = {{"height", s.robot.height},
                  {"footprint_radius", s.robot.footprint_radius}};
  if (s.environment) doc["environment"] = s.environment->string();
  doc["tick_rate"] = s.tick_rate;
  if (s.duration) doc["duration_s"] = *s.duration;
  doc["motion"] = std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StationaryMotion>) {
          return {{"type", "stationary"}, {"position", point_json(m.position)}};
        } else if constexpr (std::is_same_v<T, WaypointMotion>) {
          json pts = json::array();
          for (Vec2 p : m.points) pts.push_back(point_json(p));
          return {{"type", "waypoints"}, {"points", pts}, {"speed", m.speed}};
        } else if constexpr (std::is_same_v<T, OrbitMotion>) {
          return {{"type", "orbit"},
                  {"radius", m.radius},
                  {"from_deg", rad_to_deg(m.from)},
                  {"to_deg", rad_to_deg(m.to)},
                  {"speed", m.speed}};
        } else {
          return {{"type", "unicycle"},
                  {"start", point_json(m.start)},
                  {"heading_deg", rad_to_deg(m.heading)},
                  {"speed", m.speed}};
        }
      },
      s.motion);
  doc["control"] = to_string(s.control);
  doc["plant"] = to_string(s.plant);
  const PidGains g = s.effective_gains();
  doc["gains"] = {{"kp", matrix_json(g.kp)},
                  {"ki", matrix_json(g.ki)},
                  {"kd", matrix_json(g.kd)}};
  doc["plant_params"] = {{"a", s.plant_params.a},
                         {"b", s.plant_params.b},
                         {"f", s.plant_params.f},
                         {"g", s.plant_params.g}};
  doc["limits"] = {{"max_tilt_step_deg", rad_to_deg(s.limits.max_tilt_step)},
                   {"max_pan_step_deg", rad_to_deg(s.limits.max_pan_step)},
                   {"integral_limit", s.limits.integral_limit}};
  doc["tilt_bounds_deg"] = {rad_to_deg(s.tilt.min), rad_to_deg(s.tilt.max)};
  if (s.initial_light)
    doc["initial_light"] = {{"tilt_deg", rad_to_deg(s.initial_light->tilt)},
                            {"pan_deg", rad_to_deg(s.initial_light->pan)}};
  doc["shadow_samples"] = s.shadow_samples;
  doc["measurement_noise"] = {{"radial_m", s.noise_radial},
                              {"bearing_deg", rad_to_deg(s.noise_bearing)}};
  doc["seed"] = s.seed;
  if (s.tracking_error_bound) doc["tracking_error_bound"] = *s.tracking_error_bound;
  return doc;
}

}  // namespace shadowcast
