#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "autotamp/environment.hpp"
#include "autotamp/planner.hpp"
#include "autotamp/stl.hpp"

namespace autotamp {

// One benchmark instance: map, instruction, and the ground-truth checker
// formula the monitor verifies outcomes against.
struct ScenarioCase {
  std::string scenario;  // houseworld1, houseworld2, chips, overcooked, rover, wall
  std::string name;
  Environment environment;
  std::string instruction;
  StlPtr ground_truth_stl;
  double time_limit = std::numeric_limits<double>::infinity();
  PlanConfig plan_hint;
};

// Data directory: AUTOTAMP_SCENARIO_DIR env var, else the compiled-in
// repository path.
std::string scenario_data_dir();

// All shipped cases, one or more per scenario, loaded from the data files.
// The HouseWorld2 time limit is derived at load time: the ground-truth
// formula is planned without a limit and the limit is the duration of that
// reference path traversed at 0.8 * v_max.
std::vector<ScenarioCase> builtin_cases();

const ScenarioCase& find_case(const std::vector<ScenarioCase>& cases, const std::string& scenario);

// The ten HouseWorld instructions shipped as data.
std::vector<std::string> houseworld_instructions();

// Start positions resampled uniformly (deterministic in seed) inside the
// scenario's start zone (regions tagged function=start_zone, else the whole
// workspace), rejecting samples inside any region or too close to another
// agent. Throws after 1000 rejected attempts.
ScenarioCase randomize(const ScenarioCase& base, uint64_t seed);

// Copy of env where every region with a locked_by attribute whose key region
// has not been visited is added to the walls group; used by the task-planning
// baselines' executability checks.
Environment with_locked_doors(const Environment& env, const std::set<std::string>& visited_regions);

// Euclidean path length of an agent trajectory (sum over all agents).
double trajectory_path_length(const Trajectory& traj);

}  // namespace autotamp
