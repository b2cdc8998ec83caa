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
#include <string>

#include <doctest.h>

#include "oracles.hpp"
#include "shadowcast/errors.hpp"
#include "shadowcast/heightfield.hpp"
#include "shadowcast/light.hpp"

using namespace shadowcast;
using doctest::Approx;

namespace {

oracle::Grid to_oracle(const HeightField& f) {
  return {f.origin().x, f.origin().y, f.cell_size(), static_cast<int>(f.nx()),
          static_cast<int>(f.ny()), {f.heights().begin(), f.heights().end()}};
}

// Random blocky terrain with a flat border so rays can land on the ground.
HeightField random_terrain(std::mt19937_64& rng, double cell, std::size_t n) {
  std::uniform_int_distribution<int> pick(0, 9);
  std::vector<double> h(n * n, 0.0);
  for (std::size_t iy = 2; iy + 2 < n; ++iy)
    for (std::size_t ix = 2; ix + 2 < n; ++ix) {
      const int k = pick(rng);
      h[iy * n + ix] = k < 6 ? 0.0 : 0.25 * (k - 5);
    }
  return HeightField({-0.5 * cell * n, -0.5 * cell * n}, cell, n, n, std::move(h));
}

std::string error_of(const std::string& text) {
  try {
    parse_heightfield(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a flat 2x2 field") {
  const HeightField f = parse_heightfield(
      R"({"cell_size": 1.0, "origin": [0, 0], "nx": 2, "ny": 2, "heights": [0, 0, 0, 0]})");
  CHECK(f.nx() == 2);
  CHECK(f.ny() == 2);
  CHECK(f.max_corner() == Vec2{2.0, 2.0});
  CHECK(f.surface_height({1.5, 0.5}) == 0.0);
}

TEST_CASE("parse a wall column") {
  const HeightField f = parse_heightfield(
      R"({"cell_size": 1.0, "origin": [0, 0], "nx": 3, "ny": 2, "heights": [0, 2, 0, 0, 2, 0]})");
  CHECK(f.height(1, 0) == 2.0);
  CHECK(f.height(1, 1) == 2.0);
  CHECK(f.surface_height({1.5, 1.5}) == 2.0);
  CHECK(f.surface_height({0.5, 1.5}) == 0.0);
}

TEST_CASE("height field parse errors") {
  CHECK(error_of(R"({"cell_size": 1, "origin": [0, 0], "nx": 2, "ny": 2, "heights": [0, 0, 0]})")
            .find("found 3 values") != std::string::npos);
  CHECK(error_of(R"({"cell_size": 1, "origin": [0, 0], "nx": 2, "ny": 2, "heights": [0, -1, 0, 0]})")
            .find("ix=1, iy=0") != std::string::npos);
  CHECK(error_of(R"({"cell_size": 1, "origin": [0, 0], "nx": 1, "ny": 1, "heights": [0], "z": 1})")
            .find("unknown key 'z'") != std::string::npos);
  CHECK(error_of(R"({"cell_size": 1, "origin": [0, 0], "nx": 1, "heights": [0]})")
            .find("missing key 'ny'") != std::string::npos);
  CHECK(error_of(R"({"cell_size": 0, "origin": [0, 0], "nx": 1, "ny": 1, "heights": [0]})")
            .find("cell_size") != std::string::npos);

  try {
    parse_heightfield("{\n\"cell_size\": 1,\n\"origin\": [0, 0],,\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("height field dump round trip") {
  std::mt19937_64 rng(1);
  const HeightField f = random_terrain(rng, 0.37, 9);
  const HeightField g = parse_heightfield(dump_heightfield(f));
  CHECK(g.origin() == f.origin());
  CHECK(g.cell_size() == f.cell_size());
  CHECK(std::equal(f.heights().begin(), f.heights().end(), g.heights().begin(),
                   g.heights().end()));
}

TEST_CASE("raycast vertical and upward rays") {
  const HeightField f = HeightField::flat({0.0, 0.0}, 1.0, 2, 2);
  const auto hit = raycast({0.5, 0.5, 1.0}, {0.0, 0.0, -1.0}, f);
  REQUIRE(hit);
  CHECK(hit->position == Vec3{0.5, 0.5, 0.0});
  CHECK(hit->kind == SurfaceKind::ground);
  CHECK_FALSE(raycast({0.5, 0.5, 1.0}, {0.0, 0.0, 1.0}, f));
  CHECK_THROWS_AS(raycast({0.5, 0.5, 1.0}, {0.0, 0.0, -2.0}, f), DomainError);
}

TEST_CASE("raycast rejects an origin under the surface") {
  const HeightField f({0.0, 0.0}, 1.0, 2, 1, {0.0, 1.0});
  CHECK_THROWS_AS(raycast({1.5, 0.5, 0.5}, {0.0, 0.0, -1.0}, f), DomainError);
}

TEST_CASE("oblique rays on flat ground match the plane intersection") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const HeightField f = HeightField::flat({-20.0, -20.0}, 0.7, 58, 58);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 o{6.0 * u(rng) - 3.0, 6.0 * u(rng) - 3.0, 0.1 + 3.0 * u(rng)};
    const LightPose pose{0.2 + 1.3 * u(rng), 2.0 * kPi * u(rng)};
    const Vec3 d = light_direction(pose);
    const auto hit = raycast(o, d, f);
    REQUIRE(hit);
    const Vec3 expect = o + (-o.z / d.z) * d;
    CHECK(std::abs(hit->position.x - expect.x) <= 1e-9);
    CHECK(std::abs(hit->position.y - expect.y) <= 1e-9);
    CHECK(hit->position.z == 0.0);
  }
}

TEST_CASE("raycast agrees with a fine-march oracle on blocky terrain") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const HeightField f = random_terrain(rng, 0.5, 16);
    const oracle::Grid g = to_oracle(f);
    for (int i = 0; i < 100; ++i) {
      const Vec2 p{6.0 * u(rng) - 3.0, 6.0 * u(rng) - 3.0};
      const Vec3 o{p.x, p.y, f.surface_height(p) + 0.2 + 2.0 * u(rng)};
      const Vec3 d = light_direction({0.15 + 1.2 * u(rng), 2.0 * kPi * u(rng)});
      const auto hit = raycast(o, d, f);
      const auto expect = oracle::march(g, o, d, 1e-3, 30.0);
      REQUIRE(hit.has_value() == expect.has_value());
      if (!hit) continue;
      CHECK(norm(hit->position - *expect) <= 1e-6);
      // A face point sits on a cell edge; the blocking cell is the one ahead.
      const double top = f.surface_height(xy(hit->position + 1e-9 * d));
      if (hit->kind == SurfaceKind::wall_face)
        CHECK(hit->position.z < top + 1e-9);
      else
        CHECK(hit->position.z == Approx(top));
    }
  }
}

TEST_CASE("raycast entering from outside the field") {
  const HeightField f({0.0, 0.0}, 1.0, 3, 1, {0.0, 0.0, 1.0});
  const Vec3 d{std::cos(0.2), 0.0, -std::sin(0.2)};
  const auto hit = raycast({-2.0, 0.5, 1.0}, d, f);
  REQUIRE(hit);
  CHECK(hit->kind == SurfaceKind::wall_face);
  CHECK(hit->position.x == 2.0);
  CHECK_FALSE(raycast({-2.0, 5.0, 1.0}, d, f));
}

TEST_CASE("silhouette samples") {
  RobotGeometry geom;
  const auto s = silhouette_samples({1.0, 2.0}, 0.5, geom, {0.5, 0.0}, 9);
  REQUIRE(s.size() == 9);
  CHECK(s[0] == Vec3{1.0, 2.0, 2.0});
  for (int i = 1; i <= 4; ++i) CHECK(s[i].z == 2.0);
  for (int i = 5; i <= 8; ++i) CHECK(s[i].z == 0.5);
  CHECK(s[1].x == Approx(1.3));
  CHECK_THROWS_AS(silhouette_samples({0.0, 0.0}, 0.0, geom, {0.5, 0.0}, 0), DomainError);
}

TEST_CASE("project_shadow on flat ground matches the analytic tip") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double cell : {0.1, 0.5, 1.3}) {
    const auto n = static_cast<std::size_t>(std::ceil(80.0 / cell));
    const HeightField f = HeightField::flat({-40.0, -40.0}, cell, n, n);
    const double tol = std::max(1e-6, 1e-3 * cell);
    for (int i = 0; i < 200; ++i) {
      const Vec2 robot{4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0};
      RobotGeometry geom;
      geom.height = 0.5 + 1.5 * u(rng);
      const LightPose pose{0.2 + 1.2 * u(rng), 2.0 * kPi * u(rng)};
      const ShadowFootprint fp = project_shadow(robot, geom, pose, f);
      const Vec2 expect = forward_project_flat(robot, geom.height, pose);
      CHECK(distance(xy(fp.tip.position), expect) <= tol);
      CHECK(fp.tip.kind == SurfaceKind::ground);
      const ShadowFootprint flat = project_shadow_flat(robot, geom, pose);
      CHECK(distance(xy(flat.tip.position), expect) <= 1e-9);
    }
  }
}

TEST_CASE("a wall catches the tip on its face") {
  // Wall one cell thick across y in [3, 3.5], 2 m tall.
  const double cell = 0.5;
  std::vector<double> h(20 * 20, 0.0);
  for (std::size_t ix = 0; ix < 20; ++ix) h[16 * 20 + ix] = 2.0;
  const HeightField f({-5.0, -5.0}, cell, 20, 20, h);
  RobotGeometry geom;
  const Vec2 robot{0.0, -1.0};
  const LightPose pose{std::atan(1.5 / 6.0), kPi / 2.0};  // flat tip at y = 5
  const ShadowFootprint fp = project_shadow(robot, geom, pose, f);
  CHECK(fp.tip.kind == SurfaceKind::wall_face);
  CHECK(std::abs(fp.tip.position.y - 3.0) <= cell);
  CHECK(fp.tip.position.z > 0.0);
  CHECK(fp.tip.position.z < 2.0);
}

TEST_CASE("zero-radius robot casts a segment from base to tip") {
  const HeightField f = HeightField::flat({-10.0, -10.0}, 0.5, 40, 40);
  RobotGeometry geom;
  geom.footprint_radius = 0.0;
  const ShadowFootprint fp = project_shadow({0.0, 0.0}, geom, {0.6, 1.0}, f);
  REQUIRE(fp.outline.size() == 2);
  CHECK(distance(xy(fp.outline[0].position), {0.0, 0.0}) < 1e-12);
  CHECK(fp.outline[1] == fp.tip);
}

TEST_CASE("every footprint point is the first surface hit along its ray") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RobotGeometry geom;
  for (int trial = 0; trial < 30; ++trial) {
    const HeightField f = random_terrain(rng, 0.5, 24);
    const oracle::Grid g = to_oracle(f);
    const Vec2 robot{2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0};
    const LightPose pose{0.3 + 1.0 * u(rng), 2.0 * kPi * u(rng)};
    ShadowFootprint fp;
    try {
      fp = project_shadow(robot, geom, pose, f);
    } catch (const EmptyFootprint&) {
      continue;
    }
    const Vec3 d = light_direction(pose);
    std::size_t matched = 0;
    for (const Vec3& o :
         silhouette_samples(robot, f.surface_height(robot), geom, pose, 9)) {
      if (o.z < f.surface_height(xy(o))) continue;
      const auto expect = oracle::march(g, o, d, 1e-3, 30.0);
      if (!expect) continue;
      const bool found = std::any_of(fp.hits.begin(), fp.hits.end(), [&](const auto& h) {
        return norm(h.position - *expect) <= 1e-6;
      });
      CHECK(found);
      ++matched;
    }
    CHECK(matched == fp.hits.size());
  }
}

TEST_CASE("project_shadow is deterministic") {
  std::mt19937_64 rng(9);
  const HeightField f = random_terrain(rng, 0.5, 24);
  RobotGeometry geom;
  const LightPose pose{0.7, 1.1};
  const ShadowFootprint a = project_shadow({0.2, -0.4}, geom, pose, f);
  const ShadowFootprint b = project_shadow({0.2, -0.4}, geom, pose, f);
  CHECK(a.hits == b.hits);
  CHECK(a.outline == b.outline);
  CHECK(a.tip == b.tip);
}

TEST_CASE("halving the cell size moves footprint points by less than a cell") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const HeightField coarse = random_terrain(rng, 0.5, 24);
  std::vector<double> fine_h(48 * 48);
  for (std::size_t iy = 0; iy < 48; ++iy)
    for (std::size_t ix = 0; ix < 48; ++ix) fine_h[iy * 48 + ix] = coarse.height(ix / 2, iy / 2);
  const HeightField fine(coarse.origin(), 0.25, 48, 48, fine_h);
  RobotGeometry geom;
  for (int i = 0; i < 50; ++i) {
    const Vec2 robot{2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0};
    const LightPose pose{0.4 + 0.9 * u(rng), 2.0 * kPi * u(rng)};
    ShadowFootprint a, b;
    try {
      a = project_shadow(robot, geom, pose, coarse);
      b = project_shadow(robot, geom, pose, fine);
    } catch (const EmptyFootprint&) {
      continue;
    }
    REQUIRE(a.hits.size() == b.hits.size());
    for (std::size_t k = 0; k < a.hits.size(); ++k)
      CHECK(norm(a.hits[k].position - b.hits[k].position) < coarse.cell_size());
  }
}

TEST_CASE("project_shadow failure modes") {
  const HeightField f = HeightField::flat({-1.0, -1.0}, 0.5, 4, 4);
  RobotGeometry geom;
  CHECK_THROWS_AS(project_shadow({0.0, 0.0}, geom, {0.05, 0.0}, f), EmptyFootprint);
  CHECK_THROWS_AS(project_shadow({5.0, 0.0}, geom, {0.5, 0.0}, f), DomainError);
  CHECK_THROWS_AS(project_shadow({0.0, 0.0}, geom, {0.0, 0.0}, f), DomainError);
}

TEST_CASE("surface kind names") {
  for (SurfaceKind k : {SurfaceKind::ground, SurfaceKind::elevated_top, SurfaceKind::wall_face})
    CHECK(surface_kind_from_string(to_string(k)) == k);
  CHECK_THROWS(surface_kind_from_string("roof"));
}
