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

#include "shadowcast/record_io.hpp"

#include "shadowcast/errors.hpp"
#include "shadowcast/scenario_io.hpp"

namespace shadowcast {
namespace {

using nlohmann::json;

json pair_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 pair_from(const json& v) { return {v.at(0).get<double>(), v.at(1).get<double>()}; }

json point_json(const SurfacePoint& p) {
  return {{"x", p.position.x},
          {"y", p.position.y},
          {"z", p.position.z},
          {"kind", to_string(p.kind)}};
}

SurfacePoint point_from(const json& v) {
  return {{v.at("x").get<double>(), v.at("y").get<double>(), v.at("z").get<double>()},
          surface_kind_from_string(v.at("kind").get<std::string>())};
}

json optional_tick(const std::optional<std::uint64_t>& k) {
  return k ? json(*k) : json(nullptr);
}

}  // namespace

json to_json(const TickRecord& r) {
  json footprint = json::array();
  for (const SurfacePoint& p : r.footprint) footprint.push_back(point_json(p));
  return {
      {"v", kSchemaVersion},
      {"k", r.k},
      {"mode", to_string(r.mode)},
      {"robot",
       {{"r", r.robot.radius},
        {"bearing", r.robot.bearing},
        {"x", r.robot_global.x},
        {"y", r.robot_global.y}}},
      {"setpoint",
       {{"r", r.setpoint.radius},
        {"bearing", r.setpoint.bearing},
        {"x", r.setpoint_global.x},
        {"y", r.setpoint_global.y}}},
      {"error", pair_json(r.error)},
      {"u", pair_json(r.u)},
      {"light", {{"tilt", r.light.tilt}, {"pan", r.light.pan}}},
      {"tip", point_json(r.tip)},
      {"footprint", footprint},
      {"tip_error", r.tip_error},
      {"flags",
       {{"tilt_rate_saturated", r.flags.tilt_rate_saturated},
        {"pan_rate_saturated", r.flags.pan_rate_saturated},
        {"tilt_clamped", r.flags.tilt_clamped},
        {"assumption_violated", r.flags.assumption_violated},
        {"shadow_visible", r.flags.shadow_visible},
        {"off_field", r.flags.off_field}}},
  };
}

TickRecord tick_record_from_json(const json& doc) {
  try {
    if (doc.at("v").get<int>() != kSchemaVersion)
      throw ParseError("tick: unsupported schema version");
    TickRecord r;
    r.k = doc.at("k").get<std::uint64_t>();
    r.mode = control_mode_from_string(doc.at("mode").get<std::string>());
    const json& robot = doc.at("robot");
    r.robot = {robot.at("r").get<double>(), robot.at("bearing").get<double>()};
    r.robot_global = {robot.at("x").get<double>(), robot.at("y").get<double>()};
    const json& sp = doc.at("setpoint");
    r.setpoint = {sp.at("r").get<double>(), sp.at("bearing").get<double>()};
    r.setpoint_global = {sp.at("x").get<double>(), sp.at("y").get<double>()};
    r.error = pair_from(doc.at("error"));
    r.u = pair_from(doc.at("u"));
    r.light = {doc.at("light").at("tilt").get<double>(),
               doc.at("light").at("pan").get<double>()};
    r.tip = point_from(doc.at("tip"));
    for (const json& p : doc.at("footprint")) r.footprint.push_back(point_from(p));
    r.tip_error = doc.at("tip_error").get<double>();
    const json& f = doc.at("flags");
    r.flags.tilt_rate_saturated = f.at("tilt_rate_saturated").get<bool>();
    r.flags.pan_rate_saturated = f.at("pan_rate_saturated").get<bool>();
    r.flags.tilt_clamped = f.at("tilt_clamped").get<bool>();
    r.flags.assumption_violated = f.at("assumption_violated").get<bool>();
    r.flags.shadow_visible = f.at("shadow_visible").get<bool>();
    r.flags.off_field = f.at("off_field").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("tick: ") + e.what());
  }
}

json to_json(const Metrics& m) {
  return {{"ticks", m.ticks},
          {"max_tilt_step", m.max_tilt_step},
          {"rms_tilt_step", m.rms_tilt_step},
          {"max_pan_step", m.max_pan_step},
          {"rms_pan_step", m.rms_pan_step},
          {"rms_error", m.rms_error},
          {"max_error", m.max_error},
          {"rms_tip_error", m.rms_tip_error},
          {"max_tip_error", m.max_tip_error},
          {"visibility", m.visibility},
          {"convergence_tick", optional_tick(m.convergence_tick)}};
}

Metrics metrics_from_json(const json& doc) {
  try {
    Metrics m;
    m.ticks = doc.at("ticks").get<std::size_t>();
    m.max_tilt_step = doc.at("max_tilt_step").get<double>();
    m.rms_tilt_step = doc.at("rms_tilt_step").get<double>();
    m.max_pan_step = doc.at("max_pan_step").get<double>();
    m.rms_pan_step = doc.at("rms_pan_step").get<double>();
    m.rms_error = doc.at("rms_error").get<double>();
    m.max_error = doc.at("max_error").get<double>();
    m.rms_tip_error = doc.at("rms_tip_error").get<double>();
    m.max_tip_error = doc.at("max_tip_error").get<double>();
    m.visibility = doc.at("visibility").get<double>();
    if (!doc.at("convergence_tick").is_null())
      m.convergence_tick = doc.at("convergence_tick").get<std::uint64_t>();
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("metrics: ") + e.what());
  }
}

json to_json(const ModeComparison& c) {
  json doc = {{"direct", to_json(c.direct)}, {"pid", to_json(c.pid)}};
  doc["pid_within_bound"] = c.error_bound ? json(c.pid_within_bound) : json(nullptr);
  doc["error_bound"] = c.error_bound ? json(*c.error_bound) : json(nullptr);
  doc["max_tilt_step_ratio"] =
      c.direct.max_tilt_step > 0.0
          ? json(c.pid.max_tilt_step / c.direct.max_tilt_step)
          : json(nullptr);
  return doc;
}

std::string serialize_tick(const TickRecord& record) {
  return to_json(record).dump();
}

TickRecord parse_tick(std::string_view line) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("tick: ") + e.what());
  }
  return tick_record_from_json(doc);
}

void write_tick_log(std::ostream& out, const std::vector<TickRecord>& records) {
  for (const TickRecord& r : records) out << serialize_tick(r) << '\n';
}

}  // namespace shadowcast
