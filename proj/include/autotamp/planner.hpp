#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autotamp/environment.hpp"
#include "autotamp/milp/model.hpp"
#include "autotamp/stl.hpp"

namespace autotamp {

struct PlanConfig {
  int steps = 20;            // N; trajectory has N+1 waypoints
  double horizon = 0;        // T seconds; 0 means env.time_limit, or 20 when unbounded
  double robustness_margin = 0.05;  // rho_min, meters
  double big_m = 0;          // 0 means 2x the workspace diagonal
  bool collision = true;     // pairwise agent separation at every step
  double secondary_objective_weight = 1e-3;  // path-length penalty

  // Solver knobs; the margin objective dominates, so a modest gap only
  // affects the path-length tie-break.
  double solve_time_limit = std::numeric_limits<double>::infinity();
  double solve_gap = 5e-4;

  double dt() const { return horizon / steps; }
};

// Where everything landed in the MILP, for extraction and for tests.
struct VarMap {
  int steps = 0;
  double dt = 0;
  double horizon = 0;
  std::vector<std::string> agent_names;
  std::vector<std::vector<int>> x;  // [agent][step] variable ids
  std::vector<std::vector<int>> y;
  int margin = -1;                      // shared satisfaction-margin variable
  std::vector<int> predicate_binaries;  // per (predicate node, step) indicators
  std::vector<int> aggregation_binaries;  // F/Or/Until selectors, G indicators, escape chains
  std::vector<int> face_binaries;         // outside-face and collision disjunctions
};

struct CompileResult {
  milp::MilpModel model;
  VarMap vars;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Compiles NNF(f) over the discretized multi-agent trajectory. A predicate
// over a multi-region group or several agents holds when some agent is inside
// some region of the group. not_enter avoidance is enforced with a shared
// separating face per trajectory segment, so linear interpolation cannot cut
// corners; enter constraints rely on rectangle convexity between steps.
// Compound operands of Until and Globally with mixed Or structure are
// enforced at step points only.
CompileResult compile(const StlFormula& f, const Environment& env, const PlanConfig& cfg);

struct PlanResult {
  std::optional<Trajectory> trajectory;
  milp::Solution solution;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return trajectory.has_value(); }
};

// Compile + solve + extract timed waypoints (x_{k,i}, y_{k,i}, i*dt).
PlanResult plan(const StlFormula& f, const Environment& env, const PlanConfig& cfg);

// Feasibility of one timed sub-task from a given start: plans
// "finally[t_rel, t_rel] enter(region) and globally not_enter(walls)" for a
// single agent (other agents are ignored for the probe).
bool executability_check(const std::string& region, double t_rel, Point start,
                         const Environment& env, const PlanConfig& cfg);

}  // namespace autotamp
