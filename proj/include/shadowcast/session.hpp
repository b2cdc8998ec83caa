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

#ifndef SHADOWCAST_SESSION_HPP_
#define SHADOWCAST_SESSION_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "shadowcast/sim.hpp"

namespace shadowcast {

struct SessionOptions {
  std::optional<double> tick_rate;     // overrides the scenario's rate
  std::filesystem::path base_dir;      // resolves relative environment paths
};

// Transport-independent state machine for one client connection.
//
// Client messages are JSON objects {"v": 1, "type": ..., "seq": n, ...} with
// strictly increasing seq. Server messages carry "v", "type", "session" and a
// gapless "seq" starting at 1. Accepted command and mode messages are queued
// and applied at the start of the next tick().
class Session {
 public:
  explicit Session(std::string id, SessionOptions options = {});

  // Handles one client message and returns the replies to send now.
  std::vector<std::string> handle(std::string_view text);

  // Applies queued messages and advances one tick. Returns the tick message
  // followed, once per second of simulated time, by a metrics message.
  // Returns nothing before init.
  std::vector<std::string> tick();

  bool initialized() const { return sim_ != nullptr; }
  double tick_rate() const;
  const std::string& id() const { return id_; }
  const Simulation* simulation() const { return sim_.get(); }

 private:
  using Pending = std::variant<Command, ControlMode>;

  std::string emit(const std::string& type, nlohmann::json payload);
  std::string error(std::string_view code, std::string_view detail,
                    std::optional<std::int64_t> ref = std::nullopt);
  std::vector<std::string> on_init(const nlohmann::json& msg, std::int64_t seq);

  std::string id_;
  SessionOptions options_;
  std::uint64_t out_seq_ = 0;
  std::optional<std::int64_t> in_seq_;
  std::unique_ptr<Simulation> sim_;
  std::vector<Pending> pending_;
  MetricsAccumulator metrics_;
  std::uint64_t metrics_every_ = 1;
};

}  // namespace shadowcast

#endif  // SHADOWCAST_SESSION_HPP_
