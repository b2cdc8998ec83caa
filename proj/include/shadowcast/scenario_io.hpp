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

#ifndef SHADOWCAST_SCENARIO_IO_HPP_
#define SHADOWCAST_SCENARIO_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "shadowcast/sim.hpp"

namespace shadowcast {

inline constexpr int kScenarioVersion = 1;

// Scenario documents are JSON; angles are in degrees and converted to radians
// here. Unknown keys are rejected at every level. See docs/scenario_format.md.
//
// Throws ParseError for malformed JSON or mistyped fields (message names the
// field path) and ValidationError for semantic violations. A relative
// environment path is resolved against base_dir.
Scenario parse_scenario(std::string_view text,
                        const std::filesystem::path& base_dir = {});
Scenario scenario_from_json(const nlohmann::json& doc,
                            const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json scenario_to_json(const Scenario& scenario);

std::string_view to_string(ControlMode mode);
std::string_view to_string(PlantMode mode);
ControlMode control_mode_from_string(std::string_view name);
PlantMode plant_mode_from_string(std::string_view name);

}  // namespace shadowcast

#endif  // SHADOWCAST_SCENARIO_IO_HPP_
