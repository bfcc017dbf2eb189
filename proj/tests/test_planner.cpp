#include "autotamp/planner.hpp"

#include <cmath>

#include "autotamp/monitor.hpp"
#include "doctest.h"
#include "support/helpers.hpp"

using namespace autotamp;

namespace {

Environment goal_env(double time_limit = std::numeric_limits<double>::infinity()) {
  Environment env;
  env.workspace = Rect{0, 10, 0, 10};
  env.time_limit = time_limit;
  env.regions.push_back(Region{"goal", Rect{7, 9, 7, 9}, {{"color", "blue"}}});
  env.regions.push_back(Region{"base", Rect{1, 3, 1, 3}, {}});
  env.agents.push_back(AgentSpec{"robot", Point{2, 2}, 0.2, 2.0});
  return env;
}

bool monitor_ok(const StlFormula& f, const PlanResult& res, const Environment& env, double dt) {
  REQUIRE(res.ok());
  MonitorOptions opts{aligned_monitor_step(dt)};
  return satisfied(f, *res.trajectory, env, opts);
}

}  // namespace

TEST_CASE("compile: F enter(goal) with one agent counts 5 predicate binaries") {
  Environment env = goal_env();
  PlanConfig cfg;
  cfg.steps = 4;
  cfg.horizon = 8;
  auto f = make_finally(TimeInterval::all(), make_enter("goal"));
  CompileResult comp = compile(*f, env, cfg);
  REQUIRE(comp.ok());
  CHECK(comp.vars.predicate_binaries.size() == 5);
  CHECK(comp.vars.face_binaries.empty());
  // Root disjunction: sum of the five step binaries >= 1.
  bool found = false;
  for (const auto& row : comp.model.constraints()) {
    if (row.sense == milp::Sense::GreaterEqual && row.rhs == 1.0 && row.terms.size() == 5) found = true;
  }
  CHECK(found);
}

TEST_CASE("plan: F enter(goal) reaches the goal and satisfies the monitor") {
  Environment env = goal_env();
  PlanConfig cfg;
  cfg.steps = 8;
  cfg.horizon = 8;
  auto f = make_finally(TimeInterval::all(), make_enter("goal"));
  PlanResult res = plan(*f, env, cfg);
  REQUIRE(res.ok());
  CHECK(monitor_ok(*f, res, env, cfg.dt()));
  CHECK(check_kinematics(*res.trajectory, env).empty());
}

TEST_CASE("plan: G enter(region) from inside stays put") {
  Environment env = goal_env();
  env.agents[0].start = Point{8, 8};
  PlanConfig cfg;
  cfg.steps = 6;
  cfg.horizon = 6;
  auto f = make_globally(TimeInterval::all(), make_enter("goal"));
  PlanResult res = plan(*f, env, cfg);
  REQUIRE(res.ok());
  CHECK(monitor_ok(*f, res, env, cfg.dt()));
  for (const auto& p : res.trajectory->agents.at("robot")) {
    CHECK(std::abs(p.x - 8.0) < 1.2);
    CHECK(std::abs(p.y - 8.0) < 1.2);
  }
  // The path-length penalty keeps total movement near zero.
  double len = 0;
  const auto& pts = res.trajectory->agents.at("robot");
  for (size_t i = 1; i < pts.size(); ++i) len += std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
  CHECK(len < 0.5);
}

TEST_CASE("plan: unreachable deadline is infeasible") {
  Environment env = goal_env();
  // Goal at L-inf distance 5 from start needs 2.5 s at v_max=2; demand 1 s.
  PlanConfig cfg;
  cfg.steps = 4;
  cfg.horizon = 1.0;
  auto f = make_finally(TimeInterval::of(0, 1), make_enter("goal"));
  PlanResult res = plan(*f, env, cfg);
  CHECK(!res.ok());
  REQUIRE(!res.diagnostics.empty());
  CHECK(res.diagnostics[0].code == DiagCode::Infeasible);
}

TEST_CASE("plan: not_enter avoidance never cuts corners between samples") {
  Environment env;
  env.workspace = Rect{0, 10, 0, 10};
  env.regions.push_back(Region{"goal", Rect{8.5, 9.5, 8.5, 9.5}, {}});
  env.regions.push_back(Region{"hazard", Rect{4, 6, 0, 9}, {{"group", "walls"}, {"function", "wall"}}});
  env.agents.push_back(AgentSpec{"robot", Point{1, 1}, 0.2, 2.5});
  PlanConfig cfg;
  cfg.steps = 10;
  cfg.horizon = 12;
  auto f = make_and(make_finally(TimeInterval::all(), make_enter("goal")),
                    make_globally(TimeInterval::all(), make_not_enter("walls")));
  PlanResult res = plan(*f, env, cfg);
  REQUIRE(res.ok());
  // Check the interpolated path densely, far below the monitor grid.
  const auto& pts = res.trajectory->agents.at("robot");
  for (size_t i = 1; i < pts.size(); ++i) {
    for (int s = 0; s <= 20; ++s) {
      const double u = s / 20.0;
      Point p{pts[i - 1].x + u * (pts[i].x - pts[i - 1].x),
              pts[i - 1].y + u * (pts[i].y - pts[i - 1].y)};
      CHECK(signed_distance(env.regions[1], p, -0.2) <= 1e-9);  // no overlap with the hazard
    }
  }
  CHECK(monitor_ok(*f, res, env, cfg.dt()));
}

TEST_CASE("plan: empty window for a required F is a compile diagnostic") {
  Environment env = goal_env();
  PlanConfig cfg;
  cfg.steps = 4;
  cfg.horizon = 8;  // dt = 2
  auto f = make_finally(TimeInterval::of(0.5, 1.0), make_enter("goal"));  // between grid points
  CompileResult comp = compile(*f, env, cfg);
  CHECK(!comp.ok());
  REQUIRE(!comp.diagnostics.empty());
  CHECK(comp.diagnostics[0].code == DiagCode::EmptyWindow);
  CHECK(comp.diagnostics[0].message.find("0.5") != std::string::npos);
}

TEST_CASE("plan: until orders key before door crossing") {
  Environment env;
  env.workspace = Rect{0, 10, 0, 6};
  // A wall with a single door gap; the key sits on the start side.
  env.regions.push_back(Region{"wall_a", Rect{4.5, 5.5, 0, 2}, {{"group", "walls"}, {"function", "wall"}}});
  env.regions.push_back(Region{"wall_b", Rect{4.5, 5.5, 3.5, 6}, {{"group", "walls"}, {"function", "wall"}}});
  env.regions.push_back(Region{"door", Rect{4.5, 5.5, 2, 3.5}, {{"function", "door"}}});
  env.regions.push_back(Region{"key", Rect{1, 2, 4.5, 5.5}, {}});
  env.regions.push_back(Region{"target", Rect{8, 9, 2, 3}, {}});
  env.agents.push_back(AgentSpec{"robot", Point{2, 1}, 0.2, 2.0});
  PlanConfig cfg;
  cfg.steps = 12;
  cfg.horizon = 12;
  auto f = make_and(
      make_finally(TimeInterval::all(), make_enter("target")),
      make_and(make_until(TimeInterval::all(), make_not(make_enter("door")), make_enter("key")),
               make_globally(TimeInterval::all(), make_not_enter("walls"))));
  PlanResult res = plan(*f, env, cfg);
  REQUIRE(res.ok());
  MonitorOptions opts{aligned_monitor_step(cfg.dt())};
  CHECK(satisfied(*f, *res.trajectory, env, opts));
  // Key must be visited before any door contact.
  const auto& pts = res.trajectory->agents.at("robot");
  double key_time = -1, door_time = 1e9;
  for (const auto& p : pts) {
    if (key_time < 0 && signed_distance(env.regions[3], Point{p.x, p.y}, 0.2) > 0) key_time = p.t;
    if (door_time > 1e8 && signed_distance(env.regions[2], Point{p.x, p.y}, -0.2) > 0) door_time = p.t;
  }
  CHECK(key_time >= 0);
  CHECK(key_time < door_time);
}

TEST_CASE("plan: collision constraints keep agents separated") {
  Environment env;
  env.workspace = Rect{0, 10, 0, 4};
  env.regions.push_back(Region{"left", Rect{0.5, 1.5, 1.5, 2.5}, {}});
  env.regions.push_back(Region{"right", Rect{8.5, 9.5, 1.5, 2.5}, {}});
  env.agents.push_back(AgentSpec{"a", Point{1, 2}, 0.3, 2.0});
  env.agents.push_back(AgentSpec{"b", Point{9, 2}, 0.3, 2.0});
  PlanConfig cfg;
  cfg.steps = 8;
  cfg.horizon = 8;
  // Swap sides: a must reach right, b must reach left.
  auto f = make_and(make_finally(TimeInterval::all(), make_globally(TimeInterval::all(), make_enter("right"))),
                    make_finally(TimeInterval::all(), make_globally(TimeInterval::all(), make_enter("left"))));
  PlanResult res = plan(*f, env, cfg);
  REQUIRE(res.ok());
  const auto& a = res.trajectory->agents.at("a");
  const auto& b = res.trajectory->agents.at("b");
  for (size_t i = 0; i < a.size(); ++i) {
    const double sep = std::max(std::abs(a[i].x - b[i].x), std::abs(a[i].y - b[i].y));
    CHECK(sep >= 0.6 - 1e-6);
  }
}

TEST_CASE("executability_check: reachable, blocked, and timed-out subtasks") {
  Environment env;
  env.workspace = Rect{0, 10, 0, 10};
  env.regions.push_back(Region{"room", Rect{6, 8, 6, 8}, {}});
  env.agents.push_back(AgentSpec{"robot", Point{2, 2}, 0.2, 2.0});
  PlanConfig cfg;
  cfg.steps = 8;
  CHECK(executability_check("room", 6.0, Point{2, 2}, env, cfg));
  CHECK(!executability_check("room", 1.0, Point{2, 2}, env, cfg));  // too fast to reach
  CHECK(!executability_check("room", -1.0, Point{2, 2}, env, cfg));

  // Solid wall across the map: unreachable at any budget.
  env.regions.push_back(Region{"bar", Rect{4.5, 5.5, 0, 10}, {{"group", "walls"}, {"function", "wall"}}});
  CHECK(!executability_check("room", 8.0, Point{2, 2}, env, cfg));
}

TEST_CASE("plan: deterministic output") {
  Environment env = goal_env();
  PlanConfig cfg;
  cfg.steps = 6;
  cfg.horizon = 6;
  auto f = make_finally(TimeInterval::all(), make_enter("goal"));
  PlanResult r1 = plan(*f, env, cfg);
  PlanResult r2 = plan(*f, env, cfg);
  REQUIRE(r1.ok());
  REQUIRE(r2.ok());
  const auto& p1 = r1.trajectory->agents.at("robot");
  const auto& p2 = r2.trajectory->agents.at("robot");
  for (size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].x == p2[i].x);
    CHECK(p1[i].y == p2[i].y);
  }
}
