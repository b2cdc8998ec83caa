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

#include "shadowcast/session.hpp"

#include <algorithm>
#include <cmath>

#include "shadowcast/errors.hpp"
#include "shadowcast/record_io.hpp"
#include "shadowcast/scenario_io.hpp"

namespace shadowcast {
namespace {

using nlohmann::json;

std::optional<double> finite_number(const json& msg, const char* key) {
  if (!msg.contains(key)) return std::nullopt;
  const json& v = msg.at(key);
  if (!v.is_number() || !std::isfinite(v.get<double>()))
    throw ParseError(std::string(key) + ": expected a finite number");
  return v.get<double>();
}

Command parse_command(const json& msg) {
  for (const auto& [key, value] : msg.items()) {
    if (key != "v" && key != "type" && key != "seq" && key != "heading" &&
        key != "speed" && key != "waypoint")
      throw ParseError("command: unknown key '" + key + "'");
  }
  Command c;
  c.heading = finite_number(msg, "heading");
  c.speed = finite_number(msg, "speed");
  if (c.speed && *c.speed < 0.0) throw ParseError("speed: must be >= 0");
  if (msg.contains("waypoint")) {
    const json& w = msg.at("waypoint");
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
      throw ParseError("waypoint: expected [x, y]");
    c.waypoint = Vec2{w[0].get<double>(), w[1].get<double>()};
    if (!is_finite(*c.waypoint)) throw ParseError("waypoint: must be finite");
  }
  if (!c.heading && !c.speed && !c.waypoint)
    throw ParseError("command: needs heading, speed or waypoint");
  if (c.heading && c.waypoint)
    throw ParseError("command: heading and waypoint are exclusive");
  return c;
}

}  // namespace

Session::Session(std::string id, SessionOptions options)
    : id_(std::move(id)), options_(std::move(options)) {}

double Session::tick_rate() const {
  return sim_ ? sim_->scenario().tick_rate : options_.tick_rate.value_or(30.0);
}

std::string Session::emit(const std::string& type, json payload) {
  payload["v"] = kSchemaVersion;
  payload["type"] = type;
  payload["session"] = id_;
  payload["seq"] = ++out_seq_;
  return payload.dump();
}

std::string Session::error(std::string_view code, std::string_view detail,
                           std::optional<std::int64_t> ref) {
  json payload = {{"code", code}, {"detail", detail}};
  if (ref) payload["ref"] = *ref;
  return emit("error", std::move(payload));
}

std::vector<std::string> Session::handle(std::string_view text) {
  json msg;
  try {
    msg = json::parse(text);
  } catch (const json::parse_error& e) {
    return {error("malformed", e.what())};
  }
  if (!msg.is_object()) return {error("malformed", "expected a JSON object")};
  if (!msg.contains("v") || msg.at("v") != kSchemaVersion)
    return {error("unsupported_version", "expected \"v\": 1")};
  if (!msg.contains("seq") || !msg.at("seq").is_number_integer())
    return {error("malformed", "missing integer seq")};
  const auto seq = msg.at("seq").get<std::int64_t>();
  if (in_seq_ && seq <= *in_seq_)
    return {error("bad_seq", "seq must increase", seq)};
  if (!msg.contains("type") || !msg.at("type").is_string())
    return {error("malformed", "missing type", seq)};
  in_seq_ = seq;

  const std::string type = msg.at("type").get<std::string>();
  if (type == "init") return on_init(msg, seq);
  if (type != "command" && type != "mode")
    return {error("unknown_type", "unsupported message type '" + type + "'", seq)};
  if (!sim_) return {error("not_initialized", "send init first", seq)};

  try {
    if (type == "command") {
      pending_.emplace_back(parse_command(msg));
    } else {
      if (!msg.contains("mode") || !msg.at("mode").is_string())
        throw ParseError("mode: expected \"direct\" or \"pid\"");
      pending_.emplace_back(control_mode_from_string(msg.at("mode").get<std::string>()));
    }
  } catch (const ParseError& e) {
    return {error("malformed", e.what(), seq)};
  }
  return {};
}

std::vector<std::string> Session::on_init(const json& msg, std::int64_t seq) {
  if (sim_) return {error("already_initialized", "session already has a scenario", seq)};
  if (!msg.contains("scenario") || !msg.at("scenario").is_object())
    return {error("malformed", "init needs a scenario object", seq)};

  json doc = msg.at("scenario");
  // Live sessions run until disconnect.
  if (!doc.contains("duration_s")) doc["duration_s"] = 0.0;
  try {
    Scenario scenario = scenario_from_json(doc, options_.base_dir);
    if (options_.tick_rate) scenario.tick_rate = *options_.tick_rate;
    std::optional<HeightField> env = load_environment(scenario);
    sim_ = std::make_unique<Simulation>(std::move(scenario), std::move(env));
  } catch (const ParseError& e) {
    return {error("invalid_scenario", e.what(), seq)};
  } catch (const Error& e) {
    return {error("invalid_scenario", e.what(), seq)};
  }
  metrics_every_ = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::llround(sim_->scenario().tick_rate)));
  return {emit("init", {{"scenario", scenario_to_json(sim_->scenario())},
                        {"tick_rate", sim_->scenario().tick_rate}})};
}

std::vector<std::string> Session::tick() {
  if (!sim_) return {};
  for (const Pending& p : pending_) {
    if (const auto* c = std::get_if<Command>(&p)) {
      sim_->apply(*c);
    } else {
      sim_->set_control_mode(std::get<ControlMode>(p));
    }
  }
  pending_.clear();

  TickRecord record;
  try {
    record = sim_->step();
  } catch (const Error& e) {
    return {error("runtime", e.what())};
  }
  metrics_.add(record);
  std::vector<std::string> out{emit("tick", {{"tick", to_json(record)}})};
  if (sim_->ticks() % metrics_every_ == 0)
    out.push_back(emit("metrics", {{"metrics", to_json(metrics_.result())}}));
  return out;
}

}  // namespace shadowcast
