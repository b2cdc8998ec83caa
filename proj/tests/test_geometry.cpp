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

#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "shadowcast/errors.hpp"
#include "shadowcast/geometry.hpp"

using namespace shadowcast;
using doctest::Approx;

namespace {

FrameConfig default_frame() { return {}; }

oracle::Frame to_oracle(const FrameConfig& c) {
  return {c.world_radius, c.world_angle,      c.view_radius,
          c.view_angle,   c.human_position.x, c.human_position.y,
          c.human_facing};
}

bool close(Vec2 a, Vec2 b, double tol) { return distance(a, b) <= tol; }

}  // namespace

TEST_CASE("map_to_virtual worked values") {
  const FrameConfig cfg = default_frame();
  VirtualPolar v = map_to_virtual({0.0, 0.0}, cfg);
  CHECK(v.radius == 5.0);
  CHECK(v.bearing == 0.0);

  v = map_to_virtual({10.0, kPi}, cfg);
  CHECK(std::abs(v.radius) <= 1e-12);
  CHECK(v.bearing == Approx(0.59341).epsilon(1e-5));

  v = map_to_virtual({4.0, kPi / 2.0}, cfg);
  CHECK(v.radius == Approx(3.0));
  CHECK(v.bearing == Approx(0.29671).epsilon(1e-5));
}

TEST_CASE("map_to_virtual rejects out-of-range fields by name") {
  const FrameConfig cfg = default_frame();
  const auto field_of = [&](WorldPolar p) -> std::string {
    try {
      map_to_virtual(p, cfg);
    } catch (const DomainError& e) {
      return e.field();
    }
    return "";
  };
  CHECK(field_of({-0.1, 0.0}) == "r_w");
  CHECK(field_of({10.5, 0.0}) == "r_w");
  CHECK(field_of({1.0, -0.1}) == "beta_w");
  CHECK(field_of({1.0, 3.2}) == "beta_w");
  CHECK(field_of({NAN, 0.0}) == "r_w");
}

TEST_CASE("frame config validation") {
  FrameConfig cfg;
  cfg.world_radius = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.view_angle = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.view_radius = -1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("world_polar_to_global worked values") {
  const FrameConfig cfg = default_frame();
  CHECK(close(world_polar_to_global({1.0, kPi / 2.0}, cfg), {0.0, -1.0}, 1e-12));
  CHECK(close(world_polar_to_global({0.0, 1.234}, cfg), {0.0, 0.0}, 0.0));
  CHECK(close(world_polar_to_global({2.0, 0.0}, cfg), {2.0, 0.0}, 1e-12));
  CHECK(close(world_polar_to_global({2.0, kPi}, cfg), {-2.0, 0.0}, 1e-12));
}

TEST_CASE("virtual_polar_to_global worked values") {
  const FrameConfig cfg = default_frame();
  CHECK(close(virtual_polar_to_global({0.0, 0.3}, cfg), {0.0, 0.0}, 0.0));
  CHECK(close(virtual_polar_to_global({1.0, cfg.view_angle / 2.0}, cfg), {0.0, 1.0},
              1e-12));
  const Vec2 right_edge = virtual_polar_to_global({5.0, 0.0}, cfg);
  CHECK(right_edge.x == Approx(1.4618).epsilon(1e-4));
  CHECK(right_edge.y == Approx(4.7815).epsilon(1e-4));
}

TEST_CASE("shadow_robot_distance worked values") {
  const FrameConfig cfg = default_frame();
  CHECK(shadow_robot_distance({1.0, kPi / 2.0}, {1.0, cfg.view_angle / 2.0}, cfg) ==
        Approx(2.0));
  CHECK(shadow_robot_distance({0.0, 0.0}, {0.0, 0.0}, cfg) == 0.0);
  CHECK(shadow_robot_distance({2.0, 0.0}, {0.0, 0.0}, cfg) == Approx(2.0));
}

TEST_CASE("frame transforms agree with the oracle under arbitrary human pose") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    FrameConfig cfg;
    cfg.world_radius = 1.0 + 20.0 * u(rng);
    cfg.view_radius = 1.0 + 10.0 * u(rng);
    cfg.view_angle = 0.1 + 3.0 * u(rng);
    cfg.human_position = {20.0 * u(rng) - 10.0, 20.0 * u(rng) - 10.0};
    cfg.human_facing = 2.0 * kPi * u(rng);
    const oracle::Frame f = to_oracle(cfg);

    const WorldPolar w{cfg.world_radius * u(rng), cfg.world_angle * u(rng)};
    const VirtualPolar v = map_to_virtual(w, cfg);
    CHECK(std::abs(v.radius - oracle::virtual_radius(f, w.radius)) <= 1e-12);
    CHECK(std::abs(v.bearing - oracle::virtual_bearing(f, w.bearing)) <= 1e-12);

    const Vec2 gw = world_polar_to_global(w, cfg);
    CHECK(close(gw, oracle::world_point(f, w.radius, w.bearing), 1e-9));
    const Vec2 gv = virtual_polar_to_global(v, cfg);
    CHECK(close(gv, oracle::virtual_point(f, v.radius, v.bearing), 1e-9));
  }
}

TEST_CASE("mapping monotonicity") {
  const FrameConfig cfg = default_frame();
  double prev_r = INFINITY, prev_b = -INFINITY;
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    const VirtualPolar v = map_to_virtual({s * cfg.world_radius, s * cfg.world_angle}, cfg);
    CHECK(v.radius < prev_r);
    CHECK(v.bearing > prev_b);
    prev_r = v.radius;
    prev_b = v.bearing;
  }
}

TEST_CASE("every mapped setpoint lies in the view sector") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FrameConfig cfg;
  cfg.human_position = {1.5, -2.0};
  cfg.human_facing = 0.7;
  for (int i = 0; i < 2000; ++i) {
    const WorldPolar w{cfg.world_radius * u(rng), cfg.world_angle * u(rng)};
    const Vec2 g = virtual_polar_to_global(map_to_virtual(w, cfg), cfg);
    REQUIRE(in_view_sector(g, cfg));
    const Vec2 d = g - cfg.human_position;
    CHECK(norm(d) <= cfg.view_radius + 1e-12);
    if (norm(d) > 1e-9) {
      const double off = std::abs(wrap_to_pi(std::atan2(d.y, d.x) - cfg.human_facing));
      CHECK(off <= cfg.view_angle / 2.0 + 1e-12);
    }
  }
}

TEST_CASE("world polar round trip") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FrameConfig cfg;
  cfg.human_position = {-3.0, 4.0};
  cfg.human_facing = 4.0;
  for (int i = 0; i < 2000; ++i) {
    const WorldPolar w{1e-3 + (cfg.world_radius - 1e-3) * u(rng), cfg.world_angle * u(rng)};
    const WorldPolar back = global_to_world_polar(world_polar_to_global(w, cfg), cfg);
    CHECK(std::abs(back.radius - w.radius) <= 1e-9);
    CHECK(std::abs(back.bearing - w.bearing) <= 1e-9);
  }
}

TEST_CASE("virtual polar inversion of sector points") {
  const FrameConfig cfg = default_frame();
  const VirtualPolar v{3.0, 0.2};
  const VirtualPolar back = global_to_virtual_polar(virtual_polar_to_global(v, cfg), cfg);
  CHECK(back.radius == Approx(3.0));
  CHECK(back.bearing == Approx(0.2));
}

TEST_CASE("in_view_sector boundaries") {
  const FrameConfig cfg = default_frame();
  CHECK(in_view_sector({0.0, 0.0}, cfg));
  CHECK(in_view_sector({0.0, 5.0}, cfg));
  CHECK_FALSE(in_view_sector({0.0, 5.01}, cfg));
  CHECK_FALSE(in_view_sector({0.0, -0.5}, cfg));
  CHECK(in_view_sector(virtual_polar_to_global({4.0, 0.0}, cfg), cfg));
  CHECK_FALSE(in_view_sector({3.0, 1.0}, cfg));
}

TEST_CASE("rear half-disk clamp") {
  const FrameConfig cfg = default_frame();
  RearClamp c = clamp_to_rear_half_disk({1.0, -2.0}, cfg);
  CHECK_FALSE(c.clamped);
  CHECK(close(c.global, {1.0, -2.0}, 1e-12));

  c = clamp_to_rear_half_disk({1.0, 2.0}, cfg);
  CHECK(c.clamped);
  CHECK(close(c.global, {1.0, 0.0}, 1e-12));

  c = clamp_to_rear_half_disk({0.0, -12.0}, cfg);
  CHECK(c.clamped);
  CHECK(close(c.global, {0.0, -10.0}, 1e-12));
  CHECK(c.position.radius == Approx(10.0));
}

TEST_CASE("signed virtual polar near the reference matches the plain inverse") {
  const FrameConfig cfg = default_frame();
  const VirtualPolar v{3.0, 0.2};
  const VirtualPolar s = signed_virtual_polar(virtual_polar_to_global(v, cfg), cfg, 0.3);
  CHECK(s.radius == Approx(3.0));
  CHECK(s.bearing == Approx(0.2));
}

TEST_CASE("signed virtual polar is continuous through the apex") {
  const FrameConfig cfg = default_frame();
  const double ref = 0.25;
  const oracle::Frame f;
  double prev_radius = 2.0;
  for (double t = 1.0; t >= -1.0; t -= 0.125) {
    const Vec2 p = oracle::virtual_point(f, t, ref);
    const VirtualPolar s = signed_virtual_polar(p, cfg, ref);
    if (t == 0.0) continue;
    CHECK(std::abs(s.radius - t) <= 1e-12);
    CHECK(std::abs(s.bearing - ref) <= 1e-12);
    CHECK(s.radius < prev_radius);
    prev_radius = s.radius;
  }
}

TEST_CASE("signed virtual polar keeps the bearing within a quarter turn") {
  const FrameConfig cfg = default_frame();
  const oracle::Frame f;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-8.0, 8.0);
  std::uniform_real_distribution<double> bearing(0.0, cfg.view_angle);
  for (int i = 0; i < 500; ++i) {
    const Vec2 p{coord(rng), coord(rng)};
    const double ref = bearing(rng);
    const VirtualPolar s = signed_virtual_polar(p, cfg, ref);
    CHECK(std::abs(s.bearing - ref) <= kPi / 2.0 + 1e-12);
    CHECK(close(oracle::virtual_point(f, s.radius, s.bearing), p, 1e-9));
  }
}
