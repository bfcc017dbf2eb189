#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autotamp/diagnostics.hpp"

namespace autotamp {

struct Rect {
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool valid() const { return x_min < x_max && y_min < y_max; }
  bool contains_rect(const Rect& r) const {
    return r.x_min >= x_min && r.x_max <= x_max && r.y_min >= y_min && r.y_max <= y_max;
  }
};

struct Point {
  double x = 0, y = 0;
};

// Named axis-aligned rectangle with free-form attribute tags (color,
// function, group, locked_by, ...).
struct Region {
  std::string name;
  Rect rect;
  std::map<std::string, std::string> attributes;

  bool has_attribute(const std::string& key, const std::string& value) const {
    auto it = attributes.find(key);
    return it != attributes.end() && it->second == value;
  }
  bool is_wall() const { return has_attribute("function", "wall"); }
};

struct AgentSpec {
  std::string name;
  Point start;
  double half_width = 0.0;  // square extent
  double v_max = 1.0;
};

struct Environment {
  Rect workspace;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  std::vector<Region> regions;
  std::vector<AgentSpec> agents;

  // A formula name resolves to the region with that exact name, or to every
  // region whose "group" attribute matches (e.g. the wall rectangles are
  // individually named but jointly addressed as "walls").
  std::vector<const Region*> resolve_region(const std::string& name) const;
  const AgentSpec* find_agent(const std::string& name) const;
  std::vector<const Region*> wall_regions() const;
};

struct TimedPoint {
  double x = 0, y = 0, t = 0;
};

// Per-agent timed waypoints; the continuous path is the linear interpolation
// between consecutive samples. Map keys give a deterministic agent order.
struct Trajectory {
  std::map<std::string, std::vector<TimedPoint>> agents;

  double final_time() const;
  bool empty() const { return agents.empty(); }
};

struct EnvLoadResult {
  std::optional<Environment> environment;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return environment.has_value(); }
};

// Parses and fully validates the JSON environment schema:
// {"workspace":[x0,x1,y0,y1], "time_limit":num|"inf",
//  "regions":[{"name":..,"rect":[4],"attributes":{..}}],
//  "agents":[{"name":..,"start":[x,y],"half_width":..,"v_max":..}]}
EnvLoadResult load_environment(const std::string& text);
std::string save_environment(const Environment& env);

// Trajectory file schema: {"agent": [[x, y, t], ...], ...}.
Trajectory load_trajectory(const std::string& text);
std::string save_trajectory(const Trajectory& traj);

// L-infinity signed distance of p to the region deflated by `inflation`:
// positive inside (an agent of that half-width fits entirely), negative
// outside, zero on the boundary. Negative inflation grows the region.
double signed_distance(const Rect& r, Point p, double inflation);
inline double signed_distance(const Region& r, Point p, double inflation) {
  return signed_distance(r.rect, p, inflation);
}

// Piecewise-linear position of an agent at time t in [0, final time].
Point interpolate(const Trajectory& traj, const std::string& agent, double t);

// Structural trajectory checks shared by the monitor and the harness:
// monotone timestamps, common start/final times, start anchoring.
std::vector<Diagnostic> validate_trajectory(const Trajectory& traj, const Environment& env);

// Speed (Euclidean, per segment, tolerance 1e-6) and total-time checks.
std::vector<Diagnostic> check_kinematics(const Trajectory& traj, const Environment& env);

}  // namespace autotamp
