#include "autotamp/environment.hpp"

#include <cmath>

#include "doctest.h"
#include "support/helpers.hpp"

using namespace autotamp;

namespace {

Trajectory one_agent(std::vector<TimedPoint> pts, const std::string& name = "robot") {
  Trajectory t;
  t.agents[name] = std::move(pts);
  return t;
}

}  // namespace

TEST_CASE("signed_distance: unit square cases") {
  Rect sq{0, 1, 0, 1};
  CHECK(signed_distance(sq, Point{0.5, 0.5}, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(signed_distance(sq, Point{2.0, 0.5}, 0.0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(signed_distance(sq, Point{0.5, 0.5}, 0.2) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(signed_distance(sq, Point{1.0, 0.5}, 0.0) == doctest::Approx(0.0));
  // Negative inflation grows the region: overlap test for an agent body.
  CHECK(signed_distance(sq, Point{1.1, 0.5}, -0.2) == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("signed_distance is 1-Lipschitz under L-infinity steps") {
  testsupport::Rng rng(42);
  Rect r{1, 4, 2, 8};
  for (int k = 0; k < 500; ++k) {
    Point p{rng.uniform(-2, 7), rng.uniform(-2, 12)};
    Point q{p.x + rng.uniform(-0.5, 0.5), p.y + rng.uniform(-0.5, 0.5)};
    const double d = std::max(std::abs(p.x - q.x), std::abs(p.y - q.y));
    const double diff = std::abs(signed_distance(r, p, 0.1) - signed_distance(r, q, 0.1));
    CHECK(diff <= d + 1e-12);
  }
}

TEST_CASE("interpolate: waypoints and midpoints") {
  auto traj = one_agent({{0, 0, 0}, {2, 0, 1}});
  Point p = interpolate(traj, "robot", 0.5);
  CHECK(p.x == doctest::Approx(1.0));
  CHECK(p.y == doctest::Approx(0.0));
  p = interpolate(traj, "robot", 1.0);
  CHECK(p.x == doctest::Approx(2.0));

  auto traj2 = one_agent({{0, 0, 0}, {1, 1, 1}, {1, 3, 2}});
  p = interpolate(traj2, "robot", 1.5);
  CHECK(p.x == doctest::Approx(1.0));
  CHECK(p.y == doctest::Approx(2.0));

  CHECK_THROWS_AS(interpolate(traj2, "robot", 2.5), std::out_of_range);
  CHECK_THROWS_AS(interpolate(traj2, "ghost", 1.0), std::invalid_argument);
}

TEST_CASE("check_kinematics: exact speed limit passes, violations reported") {
  Environment env;
  env.workspace = Rect{-10, 10, -10, 10};
  env.agents.push_back(AgentSpec{"robot", Point{0, 0}, 0.1, 5.0});

  auto traj = one_agent({{0, 0, 0}, {3, 4, 1}});
  CHECK(check_kinematics(traj, env).empty());  // speed exactly 5

  env.agents[0].v_max = 4.0;
  auto diags = check_kinematics(traj, env);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == DiagCode::SpeedViolation);

  env.agents[0].v_max = 5.0;
  env.time_limit = 10.0;
  auto slow = one_agent({{0, 0, 0}, {1, 0, 12}});
  diags = check_kinematics(slow, env);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == DiagCode::TimeLimitViolation);

  auto still = one_agent({{0, 0, 0}});
  CHECK(check_kinematics(still, env).empty());
}

TEST_CASE("environment json: load, save, reload") {
  const std::string text = R"({
    "workspace": [0, 10, 0, 10],
    "time_limit": "inf",
    "regions": [
      {"name": "Room A", "rect": [1, 3, 1, 3], "attributes": {"color": "red"}},
      {"name": "wall_1", "rect": [4, 6, 0, 5], "attributes": {"function": "wall", "group": "walls"}}
    ],
    "agents": [
      {"name": "robot", "start": [8, 8], "half_width": 0.3, "v_max": 2.0}
    ]
  })";
  auto r = load_environment(text);
  REQUIRE(r.ok());
  const Environment& env = *r.environment;
  CHECK(env.regions.size() == 2);
  CHECK(env.regions[0].name == "room_a");  // normalized
  CHECK(env.resolve_region("walls").size() == 1);
  CHECK(env.wall_regions().size() == 1);
  CHECK(std::isinf(env.time_limit));

  auto r2 = load_environment(save_environment(env));
  REQUIRE(r2.ok());
  CHECK(r2.environment->regions.size() == 2);
  CHECK(r2.environment->agents[0].half_width == doctest::Approx(0.3));
}

TEST_CASE("environment json: empty regions list is a valid open workspace") {
  auto r = load_environment(R"({"workspace": [0, 5, 0, 5], "regions": [], "agents": []})");
  REQUIRE(r.ok());
  CHECK(r.environment->regions.empty());
}

TEST_CASE("environment json: inverted rect and other violations are diagnosed") {
  auto r = load_environment(R"({
    "workspace": [0, 10, 0, 10],
    "regions": [{"name": "bad", "rect": [5, 3, 0, 1], "attributes": {}}],
    "agents": []
  })");
  CHECK(!r.ok());
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].code == DiagCode::InvariantViolation);

  auto r2 = load_environment(R"({
    "workspace": [0, 10, 0, 10],
    "regions": [],
    "agents": [
      {"name": "a", "start": [1, 1], "half_width": 0.5, "v_max": 1},
      {"name": "b", "start": [1.2, 1.2], "half_width": 0.5, "v_max": 1}
    ]
  })");
  CHECK(!r2.ok());  // overlapping starts

  auto r3 = load_environment(R"({
    "workspace": [0, 10, 0, 10],
    "regions": [{"name": "out", "rect": [9, 12, 0, 1], "attributes": {}}],
    "agents": []
  })");
  CHECK(!r3.ok());  // region outside workspace
}

TEST_CASE("trajectory json round trip") {
  auto traj = one_agent({{0, 0, 0}, {1.5, 2.25, 1}, {3, 3, 2}});
  traj.agents["second"] = {{5, 5, 0}, {6, 6, 2}};
  Trajectory back = load_trajectory(save_trajectory(traj));
  REQUIRE(back.agents.size() == 2);
  CHECK(back.agents["robot"][1].y == doctest::Approx(2.25));
  CHECK(back.final_time() == doctest::Approx(2.0));
}

TEST_CASE("validate_trajectory flags structural problems") {
  Environment env = testsupport::small_env();
  auto ok = one_agent({{5, 5, 0}, {6, 6, 1}});
  CHECK(validate_trajectory(ok, env).empty());

  auto bad_order = one_agent({{5, 5, 0}, {6, 6, 1}, {7, 7, 0.5}});
  CHECK(!validate_trajectory(bad_order, env).empty());

  auto wrong_start = one_agent({{1, 1, 0}, {2, 2, 1}});
  CHECK(!validate_trajectory(wrong_start, env).empty());
}
