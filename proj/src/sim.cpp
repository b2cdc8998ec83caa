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

#include "shadowcast/sim.hpp"

#include <algorithm>
#include <cmath>

#include "shadowcast/errors.hpp"

namespace shadowcast {
namespace {

// Speed used by a waypoint command issued while the robot is at rest.
constexpr double kDefaultWaypointSpeed = 1.0;

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

void require_rear(Vec2 p, const FrameConfig& frame, const std::string& what) {
  try {
    global_to_world_polar(p, frame);
  } catch (const DomainError& e) {
    throw ValidationError(what + " must lie in the rear half-disk (" +
                          e.what() + ")");
  }
}

double path_length(const std::vector<Vec2>& pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
  return total;
}

bool finite_gains(const PidGains& g) {
  for (const Mat2* m : {&g.kp, &g.ki, &g.kd})
    for (const auto& row : m->m)
      for (double v : row)
        if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

void Scenario::validate() const {
  try {
    frame.validate();
    robot.validate();
    limits.validate();
    tilt.validate();
    plant_params.validate();
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  require(std::isfinite(tick_rate) && tick_rate > 0.0, "tick_rate must be > 0");
  if (duration)
    require(std::isfinite(*duration) && *duration >= 0.0,
            "duration_s must be >= 0");
  require(shadow_samples >= 1, "shadow_samples must be >= 1");
  require(noise_radial >= 0.0 && noise_bearing >= 0.0,
          "measurement noise must be >= 0");
  if (tracking_error_bound)
    require(*tracking_error_bound > 0.0, "tracking_error_bound must be > 0");
  if (gains) require(finite_gains(*gains), "gains must be finite");
  if (initial_light) {
    require(initial_light->tilt > 0.0 && initial_light->tilt < kPi / 2.0,
            "initial_light tilt must be in (0, 90) degrees");
    require(std::isfinite(initial_light->pan), "initial_light pan must be finite");
  }

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StationaryMotion>) {
          require_rear(m.position, frame, "stationary position");
          require(duration.has_value(), "stationary motion needs duration_s");
        } else if constexpr (std::is_same_v<T, WaypointMotion>) {
          require(!m.points.empty(), "waypoints must not be empty");
          require(std::isfinite(m.speed) && m.speed > 0.0,
                  "waypoint speed must be > 0");
          for (std::size_t i = 0; i < m.points.size(); ++i)
            require_rear(m.points[i], frame, "waypoint " + std::to_string(i));
        } else if constexpr (std::is_same_v<T, OrbitMotion>) {
          require(m.radius >= 0.0 && m.radius <= frame.world_radius,
                  "orbit radius must be in [0, l_w]");
          require(m.from >= 0.0 && m.from <= frame.world_angle && m.to >= 0.0 &&
                      m.to <= frame.world_angle,
                  "orbit bearings must be in [0, theta_w]");
          require(std::isfinite(m.speed) && m.speed > 0.0,
                  "orbit speed must be > 0");
        } else {
          require_rear(m.start, frame, "unicycle start");
          require(std::isfinite(m.heading), "unicycle heading must be finite");
          require(std::isfinite(m.speed) && m.speed >= 0.0,
                  "unicycle speed must be >= 0");
          require(duration.has_value(), "unicycle motion needs duration_s");
        }
      },
      motion);
}

std::size_t Scenario::tick_count() const {
  double seconds = 0.0;
  if (duration) {
    seconds = *duration;
  } else if (const auto* w = std::get_if<WaypointMotion>(&motion)) {
    seconds = path_length(w->points) / w->speed;
  } else if (const auto* o = std::get_if<OrbitMotion>(&motion)) {
    seconds = o->radius * std::abs(o->to - o->from) / o->speed;
  }
  return static_cast<std::size_t>(std::llround(seconds * tick_rate));
}

PidGains Scenario::effective_gains() const {
  return gains.value_or(PidGains{});
}

Vec2 Scenario::start_position() const {
  return std::visit(
      [&](const auto& m) -> Vec2 {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StationaryMotion>) {
          return m.position;
        } else if constexpr (std::is_same_v<T, WaypointMotion>) {
          return m.points.front();
        } else if constexpr (std::is_same_v<T, OrbitMotion>) {
          return world_polar_to_global({m.radius, m.from}, frame);
        } else {
          return m.start;
        }
      },
      motion);
}

void MetricsAccumulator::add(const TickRecord& r) {
  const double tilt = std::abs(r.u.x);
  const double pan = std::abs(r.u.y);
  const double err = norm(r.error);
  max_tilt_ = std::max(max_tilt_, tilt);
  sum_sq_tilt_ += tilt * tilt;
  max_pan_ = std::max(max_pan_, pan);
  sum_sq_pan_ += pan * pan;
  max_error_ = std::max(max_error_, err);
  sum_sq_error_ += err * err;
  max_tip_ = std::max(max_tip_, r.tip_error);
  sum_sq_tip_ += r.tip_error * r.tip_error;
  if (r.flags.shadow_visible) ++visible_;
  if (!(err < kConvergenceThreshold)) last_unconverged_ = r.k;
  ++ticks_;
}

Metrics MetricsAccumulator::result() const {
  Metrics m;
  m.ticks = ticks_;
  if (ticks_ == 0) return m;
  const double n = static_cast<double>(ticks_);
  m.max_tilt_step = max_tilt_;
  m.rms_tilt_step = std::sqrt(sum_sq_tilt_ / n);
  m.max_pan_step = max_pan_;
  m.rms_pan_step = std::sqrt(sum_sq_pan_ / n);
  m.max_error = max_error_;
  m.rms_error = std::sqrt(sum_sq_error_ / n);
  m.max_tip_error = max_tip_;
  m.rms_tip_error = std::sqrt(sum_sq_tip_ / n);
  m.visibility = static_cast<double>(visible_) / n;
  if (!last_unconverged_) {
    m.convergence_tick = 0;
  } else if (*last_unconverged_ + 1 < ticks_) {
    m.convergence_tick = *last_unconverged_ + 1;
  }
  return m;
}

Simulation::Simulation(Scenario scenario, std::optional<HeightField> env)
    : scenario_(std::move(scenario)),
      env_(std::move(env)),
      mode_(scenario_.control),
      rng_(scenario_.seed) {
  scenario_.validate();
  config_.gains = scenario_.effective_gains();
  config_.limits = scenario_.limits;
  config_.tilt = scenario_.tilt;

  const FrameConfig& frame = scenario_.frame;
  position_ = scenario_.start_position();
  heading_ = frame.human_facing - kPi / 2.0;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, WaypointMotion>) {
          drive_ = Drive::waypoints;
          targets_ = m.points;
          next_target_ = 1;
          speed_ = m.speed;
        } else if constexpr (std::is_same_v<T, OrbitMotion>) {
          drive_ = m.radius > 0.0 ? Drive::orbit : Drive::hold;
          orbit_bearing_ = m.from;
          orbit_end_ = m.to;
          speed_ = m.speed;
        } else if constexpr (std::is_same_v<T, UnicycleMotion>) {
          drive_ = Drive::unicycle;
          heading_ = m.heading;
          speed_ = m.speed;
        }
      },
      scenario_.motion);

  const RearClamp start = clamp_to_rear_half_disk(position_, frame);
  position_ = start.global;
  robot_polar_ = start.position;
  robot_global_ = start.global;

  state_.light = scenario_.initial_light
                     ? LightPose{scenario_.initial_light->tilt,
                                 wrap_to_two_pi(scenario_.initial_light->pan)}
                     : compute_light_pose(robot_polar_, scenario_.robot, frame,
                                          scenario_.tilt)
                           .pose;
  const VirtualPolar setpoint = map_to_virtual(robot_polar_, frame);
  state_.x = scenario_.initial_light
                 ? measure(robot_global_, state_.light, setpoint.bearing)
                 : setpoint;
}

double Simulation::robot_speed() const {
  return drive_ == Drive::hold ? 0.0 : speed_;
}

void Simulation::apply(const Command& c) {
  if (c.speed && !(std::isfinite(*c.speed) && *c.speed >= 0.0))
    throw DomainError("speed", "must be finite and >= 0");
  if (c.heading && !std::isfinite(*c.heading))
    throw DomainError("heading", "must be finite");
  if (c.waypoint && !is_finite(*c.waypoint))
    throw DomainError("waypoint", "must be finite");

  if (c.speed) speed_ = *c.speed;
  if (c.heading) heading_ = *c.heading;
  if (c.waypoint) {
    targets_ = {*c.waypoint};
    next_target_ = 0;
    drive_ = Drive::waypoints;
    if (speed_ == 0.0 && !c.speed) speed_ = kDefaultWaypointSpeed;
  } else if (c.heading || drive_ == Drive::hold) {
    drive_ = Drive::unicycle;
  }
}

void Simulation::set_control_mode(ControlMode mode) { mode_ = mode; }

Vec2 Simulation::advance_robot(double dt) {
  switch (drive_) {
    case Drive::hold:
      break;
    case Drive::unicycle:
      position_ = position_ + (speed_ * dt) * Vec2{std::cos(heading_),
                                                   std::sin(heading_)};
      break;
    case Drive::waypoints: {
      double remaining = speed_ * dt;
      while (remaining > 0.0 && next_target_ < targets_.size()) {
        const Vec2 to_target = targets_[next_target_] - position_;
        const double gap = norm(to_target);
        if (gap > 0.0) heading_ = std::atan2(to_target.y, to_target.x);
        if (gap <= remaining) {
          position_ = targets_[next_target_++];
          remaining -= gap;
        } else {
          position_ = position_ + (remaining / gap) * to_target;
          remaining = 0.0;
        }
      }
      if (next_target_ >= targets_.size()) drive_ = Drive::hold;
      break;
    }
    case Drive::orbit: {
      const double radius = std::get<OrbitMotion>(scenario_.motion).radius;
      const double step = speed_ * dt / radius;
      const double dir = orbit_end_ >= orbit_bearing_ ? 1.0 : -1.0;
      if (std::abs(orbit_end_ - orbit_bearing_) <= step) {
        orbit_bearing_ = orbit_end_;
        drive_ = Drive::hold;
      } else {
        orbit_bearing_ += dir * step;
      }
      position_ = world_polar_to_global({radius, orbit_bearing_}, scenario_.frame);
      heading_ = scenario_.frame.human_facing - kPi / 2.0 - orbit_bearing_ -
                 dir * kPi / 2.0;
      break;
    }
  }
  return position_;
}

ShadowFootprint Simulation::render(Vec2 robot, LightPose pose,
                                   bool& off_field) const {
  off_field = false;
  if (env_) {
    try {
      return project_shadow(robot, scenario_.robot, pose, *env_,
                            scenario_.shadow_samples);
    } catch (const EmptyFootprint&) {
      off_field = true;
    } catch (const DomainError&) {
      off_field = true;
    }
  }
  return project_shadow_flat(robot, scenario_.robot, pose,
                             scenario_.shadow_samples);
}

VirtualPolar Simulation::measure(Vec2 robot, LightPose pose,
                                 double reference_bearing) {
  Vec2 tip;
  bool done = false;
  if (env_ && env_->contains(robot)) {
    const Vec3 top{robot.x, robot.y,
                   env_->surface_height(robot) + scenario_.robot.height};
    if (const auto hit = raycast(top, light_direction(pose), *env_)) {
      tip = xy(hit->position);
      done = true;
    }
  }
  if (!done) tip = forward_project_flat(robot, scenario_.robot.height, pose);
  return signed_virtual_polar(tip, scenario_.frame, reference_bearing);
}

TickRecord Simulation::step() {
  const FrameConfig& frame = scenario_.frame;
  const double dt = 1.0 / scenario_.tick_rate;

  TickRecord rec;
  rec.k = tick_;
  rec.mode = mode_;

  const WorldPolar prev_polar = robot_polar_;
  const RearClamp moved = clamp_to_rear_half_disk(advance_robot(dt), frame);
  if (moved.clamped) position_ = moved.global;
  robot_polar_ = moved.position;
  robot_global_ = moved.global;
  rec.flags.assumption_violated = moved.clamped;
  rec.robot = robot_polar_;
  rec.robot_global = robot_global_;
  rec.setpoint = map_to_virtual(robot_polar_, frame);
  rec.setpoint_global = virtual_polar_to_global(rec.setpoint, frame);

  const LightPose prev_light = state_.light;
  if (mode_ == ControlMode::direct) {
    const LightSolution sol =
        compute_light_pose(robot_polar_, scenario_.robot, frame, scenario_.tilt);
    state_.light = sol.pose;
    state_.x = rec.setpoint;
    state_.integral = {};
    state_.prev_error = {};
    ++state_.step;
    pending_u_ = {};
    rec.flags.tilt_clamped = sol.clamped;
  } else {
    VirtualPolar measured;
    if (scenario_.plant == PlantMode::geometric) {
      measured = measure(robot_global_, state_.light, rec.setpoint.bearing);
      if (scenario_.noise_radial > 0.0)
        measured.radius +=
            std::normal_distribution<double>(0.0, scenario_.noise_radial)(rng_);
      if (scenario_.noise_bearing > 0.0)
        measured.bearing +=
            std::normal_distribution<double>(0.0, scenario_.noise_bearing)(rng_);
    } else {
      const Vec2 delta_world{robot_polar_.radius - prev_polar.radius,
                             robot_polar_.bearing - prev_polar.bearing};
      const Vec2 x = plant_step({state_.x.radius, state_.x.bearing}, pending_u_,
                                delta_world, scenario_.plant_params);
      measured = {x.x, x.y};
    }
    const TickControl tc =
        scenario_.plant == PlantMode::geometric
            ? control_tick(rec.setpoint, measured, state_, config_,
                           pose_error_resolver(measured, state_.light,
                                               scenario_.robot.height, frame))
            : control_tick(rec.setpoint, measured, state_, config_);
    rec.error = tc.error;
    rec.flags.tilt_rate_saturated = tc.output.saturated[0];
    rec.flags.pan_rate_saturated = tc.output.saturated[1];
    rec.flags.tilt_clamped = tc.tilt_clamped;
    pending_u_ = {state_.light.tilt - prev_light.tilt,
                  wrap_to_pi(state_.light.pan - prev_light.pan)};
  }
  rec.light = state_.light;
  rec.u = {state_.light.tilt - prev_light.tilt,
           wrap_to_pi(state_.light.pan - prev_light.pan)};

  ShadowFootprint fp = render(robot_global_, state_.light, rec.flags.off_field);
  rec.tip = fp.tip;
  rec.footprint = std::move(fp.outline);
  rec.tip_error = distance(xy(rec.tip.position), rec.setpoint_global);
  rec.flags.shadow_visible = in_view_sector(xy(rec.tip.position), frame);

  ++tick_;
  return rec;
}

std::optional<HeightField> load_environment(const Scenario& scenario) {
  if (!scenario.environment) return std::nullopt;
  return load_heightfield(*scenario.environment);
}

ScenarioRun run_scenario(const Scenario& scenario,
                         const std::optional<HeightField>& env) {
  Simulation sim(scenario, env);
  ScenarioRun run;
  const std::size_t n = scenario.tick_count();
  run.records.reserve(n);
  MetricsAccumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    run.records.push_back(sim.step());
    acc.add(run.records.back());
  }
  run.metrics = acc.result();
  return run;
}

ScenarioRun run_scenario(const Scenario& scenario) {
  return run_scenario(scenario, load_environment(scenario));
}

ModeComparison compare_modes(const Scenario& scenario,
                             const std::optional<HeightField>& env) {
  Scenario direct = scenario;
  direct.control = ControlMode::direct;
  Scenario pid = scenario;
  pid.control = ControlMode::pid;
  const ScenarioRun a = run_scenario(direct, env);
  const ScenarioRun b = run_scenario(pid, env);

  ModeComparison out;
  out.direct = a.metrics;
  out.pid = b.metrics;
  out.trace.reserve(a.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    out.trace.push_back({a.records[i].k, std::abs(a.records[i].u.x),
                         std::abs(a.records[i].u.y), std::abs(b.records[i].u.x),
                         std::abs(b.records[i].u.y)});
  }
  out.error_bound = scenario.tracking_error_bound;
  if (out.error_bound) out.pid_within_bound = out.pid.rms_error <= *out.error_bound;
  return out;
}

ModeComparison compare_modes(const Scenario& scenario) {
  return compare_modes(scenario, load_environment(scenario));
}

}  // namespace shadowcast
