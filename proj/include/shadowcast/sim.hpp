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

#ifndef SHADOWCAST_SIM_HPP_
#define SHADOWCAST_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "shadowcast/controller.hpp"
#include "shadowcast/geometry.hpp"
#include "shadowcast/heightfield.hpp"
#include "shadowcast/light.hpp"

namespace shadowcast {

enum class ControlMode { direct, pid };
enum class PlantMode { geometric, model };

// Robot holds its position.
struct StationaryMotion {
  Vec2 position;
};
// Constant-speed linear interpolation through global points, starting at the
// first one. The robot stops at the last point.
struct WaypointMotion {
  std::vector<Vec2> points;
  double speed = 1.0;
};
// Constant-speed arc around the human at a fixed world radius, from one world
// bearing to another (radians).
struct OrbitMotion {
  double radius = 0.0;
  double from = 0.0;
  double to = kPi;
  double speed = 1.0;
};
// Unicycle with constant global heading (radians) and speed.
struct UnicycleMotion {
  Vec2 start;
  double heading = 0.0;
  double speed = 0.0;
};
using Motion =
    std::variant<StationaryMotion, WaypointMotion, OrbitMotion, UnicycleMotion>;

struct Scenario {
  std::string name = "scenario";
  FrameConfig frame;
  RobotGeometry robot;
  std::optional<std::filesystem::path> environment;
  double tick_rate = 30.0;          // Hz
  std::optional<double> duration;   // seconds; defaults to the motion's length
  Motion motion = StationaryMotion{};
  ControlMode control = ControlMode::pid;
  PlantMode plant = PlantMode::geometric;
  std::optional<PidGains> gains;    // defaults depend on the plant mode
  PlantParams plant_params;
  ControlLimits limits;
  TiltBounds tilt;
  std::optional<LightPose> initial_light;
  std::size_t shadow_samples = kDefaultSilhouetteSamples;
  double noise_radial = 0.0;        // std-dev of measured r_v, meters
  double noise_bearing = 0.0;       // std-dev of measured beta_v, radians
  std::uint64_t seed = 0;
  std::optional<double> tracking_error_bound;  // pid RMS |e| budget

  // Throws ValidationError / DomainError.
  void validate() const;
  std::size_t tick_count() const;
  PidGains effective_gains() const;
  Vec2 start_position() const;
};

// A live steering command. Absent fields keep their current values; a
// waypoint switches the robot to point-to-point travel.
struct Command {
  std::optional<double> heading;  // global, radians
  std::optional<double> speed;    // m/s
  std::optional<Vec2> waypoint;   // global
};

struct TickFlags {
  bool tilt_rate_saturated = false;
  bool pan_rate_saturated = false;
  bool tilt_clamped = false;
  bool assumption_violated = false;
  bool shadow_visible = false;
  bool off_field = false;  // footprint fell back to the analytic ground plane
  friend bool operator==(const TickFlags&, const TickFlags&) = default;
};

struct TickRecord {
  std::uint64_t k = 0;
  ControlMode mode = ControlMode::pid;
  WorldPolar robot;
  Vec2 robot_global;
  VirtualPolar setpoint;
  Vec2 setpoint_global;
  Vec2 error;  // e(k), zero in direct mode
  Vec2 u;      // applied (d_tilt, d_pan) this tick
  LightPose light;
  SurfacePoint tip;
  std::vector<SurfacePoint> footprint;
  double tip_error = 0.0;  // |tip - setpoint| in the plane, meters
  TickFlags flags;
  friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

inline constexpr double kConvergenceThreshold = 1e-3;

struct Metrics {
  std::size_t ticks = 0;
  double max_tilt_step = 0.0;
  double rms_tilt_step = 0.0;
  double max_pan_step = 0.0;
  double rms_pan_step = 0.0;
  double rms_error = 0.0;  // RMS of |e(k)|
  double max_error = 0.0;
  double rms_tip_error = 0.0;
  double max_tip_error = 0.0;
  double visibility = 0.0;  // fraction of ticks with the tip in the sector
  // First k from which |e| < kConvergenceThreshold holds to the end.
  std::optional<std::uint64_t> convergence_tick;
  friend bool operator==(const Metrics&, const Metrics&) = default;
};

class MetricsAccumulator {
 public:
  void add(const TickRecord& record);
  Metrics result() const;

 private:
  std::size_t ticks_ = 0;
  double max_tilt_ = 0.0, sum_sq_tilt_ = 0.0;
  double max_pan_ = 0.0, sum_sq_pan_ = 0.0;
  double max_error_ = 0.0, sum_sq_error_ = 0.0;
  double max_tip_ = 0.0, sum_sq_tip_ = 0.0;
  std::size_t visible_ = 0;
  std::optional<std::uint64_t> last_unconverged_;
};

// One closed-loop session. Single-threaded; commands and mode changes take
// effect at the next step().
class Simulation {
 public:
  // env, when present, receives the shadow; otherwise the ground is the plane
  // z = 0. Throws on an invalid scenario.
  Simulation(Scenario scenario, std::optional<HeightField> env = std::nullopt);

  TickRecord step();
  void apply(const Command& command);
  void set_control_mode(ControlMode mode);

  ControlMode control_mode() const { return mode_; }
  const Scenario& scenario() const { return scenario_; }
  std::uint64_t ticks() const { return tick_; }
  const ControllerState& controller() const { return state_; }
  LightPose light() const { return state_.light; }
  WorldPolar robot() const { return robot_polar_; }
  Vec2 robot_global() const { return robot_global_; }
  double robot_speed() const;

 private:
  enum class Drive { hold, waypoints, orbit, unicycle };

  Vec2 advance_robot(double dt);
  ShadowFootprint render(Vec2 robot, LightPose pose, bool& off_field) const;
  VirtualPolar measure(Vec2 robot, LightPose pose, double reference_bearing);

  Scenario scenario_;
  std::optional<HeightField> env_;
  ControllerConfig config_;
  ControlMode mode_;

  // Robot drive state.
  Drive drive_ = Drive::hold;
  Vec2 position_;
  double heading_ = 0.0;
  double speed_ = 0.0;
  std::vector<Vec2> targets_;
  std::size_t next_target_ = 0;
  double orbit_bearing_ = 0.0;
  double orbit_end_ = 0.0;

  WorldPolar robot_polar_;
  Vec2 robot_global_;
  ControllerState state_;
  Vec2 pending_u_{};
  std::uint64_t tick_ = 0;
  std::mt19937_64 rng_;
};

struct ScenarioRun {
  std::vector<TickRecord> records;
  Metrics metrics;
};

ScenarioRun run_scenario(const Scenario& scenario,
                         const std::optional<HeightField>& env);
// Loads scenario.environment when set.
ScenarioRun run_scenario(const Scenario& scenario);

struct ModeTrace {
  std::uint64_t k = 0;
  double direct_tilt_step = 0.0;
  double direct_pan_step = 0.0;
  double pid_tilt_step = 0.0;
  double pid_pan_step = 0.0;
};

struct ModeComparison {
  Metrics direct;
  Metrics pid;
  std::vector<ModeTrace> trace;  // per-tick |d_tilt|, |d_pan|
  std::optional<double> error_bound;
  bool pid_within_bound = true;  // pid.rms_error <= error_bound, if set
};

// Runs the scenario under direct and pid control with the same robot motion.
ModeComparison compare_modes(const Scenario& scenario,
                             const std::optional<HeightField>& env);
ModeComparison compare_modes(const Scenario& scenario);

std::optional<HeightField> load_environment(const Scenario& scenario);

}  // namespace shadowcast

#endif  // SHADOWCAST_SIM_HPP_
