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

#ifndef SHADOWCAST_RECORD_IO_HPP_
#define SHADOWCAST_RECORD_IO_HPP_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "shadowcast/sim.hpp"

namespace shadowcast {

// Version of the tick-log and wire schemas.
inline constexpr int kSchemaVersion = 1;

// Tick records serialize losslessly: angles stay in radians and doubles are
// written in shortest round-trip form, so parse(serialize(r)) == r.
nlohmann::json to_json(const TickRecord& record);
TickRecord tick_record_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const Metrics& metrics);
Metrics metrics_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const ModeComparison& comparison);

// One compact JSON object per line, each carrying "v".
std::string serialize_tick(const TickRecord& record);
TickRecord parse_tick(std::string_view line);
void write_tick_log(std::ostream& out, const std::vector<TickRecord>& records);

}  // namespace shadowcast

#endif  // SHADOWCAST_RECORD_IO_HPP_
