#pragma once

#include <string>
#include <vector>

#include "autotamp/environment.hpp"
#include "autotamp/stl.hpp"

namespace autotamp {

struct MonitorOptions {
  double step = 0.1;  // uniform grid step, seconds
};

// Largest step <= target that divides dt evenly, so a monitor grid contains
// every planner step time.
double aligned_monitor_step(double dt, double target = 0.1);

// Quantitative robustness on the uniform grid over [0, final time].
// Temporal windows snap outward (floor on the lower index, ceil on the
// upper); a window clipped to nothing yields -inf for F/Until and +inf for G.
// Until requires the left operand on [t, tau) and the right operand at tau.
// Throws std::invalid_argument if f does not validate against env, and
// std::out_of_range for t outside the trajectory span.
double robustness(const StlFormula& f, const Trajectory& traj, const Environment& env, double t,
                  const MonitorOptions& opts = {});

// Full robustness signal, one value per grid index; used by tests and by the
// planner's soundness checks.
std::vector<double> robustness_signal(const StlFormula& f, const Trajectory& traj,
                                      const Environment& env, const MonitorOptions& opts = {});

// robustness(f, traj, env, 0) >= -1e-6 and check_kinematics is clean.
bool satisfied(const StlFormula& f, const Trajectory& traj, const Environment& env,
               const MonitorOptions& opts = {});

struct StateEntry {
  std::string region;  // innermost region name or "open_space"
  double entry_time = 0;
};

struct StateSequence {
  std::map<std::string, std::vector<StateEntry>> agents;
};

// Innermost-region occupancy along the grid, run-length compressed. Ties on
// containment break toward the smallest area, then the lexicographically
// smallest name.
StateSequence state_sequence(const Trajectory& traj, const Environment& env,
                             const MonitorOptions& opts = {});

// Text form fed back to the language model:
// "[[in(road), 0], [in(kitchen), 0.5]]"; one "name: [...]" line per agent
// when there are several.
std::string render_state_sequence(const StateSequence& seq);

}  // namespace autotamp
