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

// shadowcast: run scenarios offline or serve live sessions over WebSocket.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "shadowcast/errors.hpp"
#include "shadowcast/record_io.hpp"
#include "shadowcast/scenario_io.hpp"
#include "shadowcast/server.hpp"
#include "shadowcast/sim.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int run(const std::string& scenario_path, const std::string& out_path,
        bool compare) {
  using namespace shadowcast;
  Scenario scenario;
  std::optional<HeightField> env;
  try {
    scenario = load_scenario(scenario_path);
    env = load_environment(scenario);
  } catch (const std::exception& e) {
    std::cerr << "shadowcast: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    const ScenarioRun result = run_scenario(scenario, env);
    nlohmann::json summary = {{"v", kSchemaVersion},
                              {"scenario", scenario.name},
                              {"mode", to_string(scenario.control)},
                              {"plant", to_string(scenario.plant)},
                              {"metrics", to_json(result.metrics)}};
    if (compare) summary["comparison"] = to_json(compare_modes(scenario, env));

    if (!out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw Error("cannot write " + out_path);
      write_tick_log(out, result.records);
      if (!out.flush()) throw Error("write failed: " + out_path);
    }
    std::cout << summary.dump(2) << '\n';
  } catch (const std::exception& e) {
    std::cerr << "shadowcast: " << e.what() << '\n';
    return kExitRuntime;
  }
  return EXIT_SUCCESS;
}

int serve(std::string bind, std::optional<double> tick_rate) {
  using namespace shadowcast;
  try {
    if (bind.empty()) {
      const char* env = std::getenv("SHADOWCAST_BIND");
      bind = env != nullptr && *env != '\0' ? env : std::string(kDefaultBind);
    }
    if (tick_rate && !(*tick_rate > 0.0))
      throw ValidationError("--tick-rate must be > 0");
    auto [host, port] = parse_bind(bind);
    ServerOptions options;
    options.address = host;
    options.port = port;
    options.tick_rate = tick_rate;
    options.base_dir = std::filesystem::current_path();
    options.handle_signals = true;
    Server server(options);
    std::cerr << "shadowcast: listening on ws://" << host << ':' << server.port()
              << '\n';
    server.run();
  } catch (const ValidationError& e) {
    std::cerr << "shadowcast: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "shadowcast: " << e.what() << '\n';
    return kExitRuntime;
  }
  return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual-shadow steering simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_path;
  bool compare = false;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario and print metrics");
  run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run_cmd->add_option("--out", out_path, "Write the tick log (one JSON record per line)");
  run_cmd->add_flag("--compare", compare, "Also report paired direct/pid metrics");

  std::string bind;
  std::optional<double> tick_rate;
  CLI::App* serve_cmd = app.add_subcommand(
      "serve", "Serve live sessions over WebSocket (env SHADOWCAST_BIND)");
  serve_cmd->add_option("--bind", bind, "host:port, default 127.0.0.1:8765");
  serve_cmd->add_option("--tick-rate", tick_rate, "Override scenario tick rate (Hz)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  if (*run_cmd) return run(scenario_path, out_path, compare);
  return serve(bind, tick_rate);
}
