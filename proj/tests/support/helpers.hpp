#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "autotamp/environment.hpp"
#include "autotamp/stl.hpp"

namespace testsupport {

using namespace autotamp;

// mt19937_64 output is pinned by the standard; the distributions below avoid
// std::uniform_*_distribution so sequences are identical everywhere.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int a, int b) { return a + static_cast<int>(eng() % static_cast<uint64_t>(b - a + 1)); }
  bool chance(double p) { return uniform() < p; }
};

inline TimeInterval random_interval(Rng& rng) {
  double lo = std::floor(rng.uniform(0, 8) * 10.0) / 10.0;
  if (rng.chance(0.3)) return TimeInterval{lo, std::numeric_limits<double>::infinity()};
  double hi = lo + std::floor(rng.uniform(0, 8) * 10.0) / 10.0;
  return TimeInterval{lo, hi};
}

inline StlPtr random_formula(Rng& rng, int max_depth, const std::vector<std::string>& regions) {
  auto region = [&]() { return regions[rng.uniform_int(0, static_cast<int>(regions.size()) - 1)]; };
  if (max_depth <= 0 || rng.chance(0.25)) {
    return rng.chance(0.5) ? make_enter(region()) : make_not_enter(region());
  }
  switch (rng.uniform_int(0, 7)) {
    case 0: return make_not(random_formula(rng, max_depth - 1, regions));
    case 1: return make_and(random_formula(rng, max_depth - 1, regions), random_formula(rng, max_depth - 1, regions));
    case 2: return make_or(random_formula(rng, max_depth - 1, regions), random_formula(rng, max_depth - 1, regions));
    case 3: return make_imply(random_formula(rng, max_depth - 1, regions), random_formula(rng, max_depth - 1, regions));
    case 4: return make_equiv(random_formula(rng, max_depth - 1, regions), random_formula(rng, max_depth - 1, regions));
    case 5: return make_finally(random_interval(rng), random_formula(rng, max_depth - 1, regions));
    case 6: return make_globally(random_interval(rng), random_formula(rng, max_depth - 1, regions));
    default:
      return make_until(random_interval(rng), random_formula(rng, max_depth - 1, regions),
                        random_formula(rng, max_depth - 1, regions));
  }
}

// Box workspace [0,10]^2 with three rooms and one agent.
inline Environment small_env() {
  Environment env;
  env.workspace = Rect{0, 10, 0, 10};
  env.regions.push_back(Region{"room_a", Rect{1, 3, 1, 3}, {}});
  env.regions.push_back(Region{"room_b", Rect{6, 9, 6, 9}, {}});
  env.regions.push_back(Region{"room_c", Rect{4, 5.5, 0.5, 2.5}, {}});
  env.agents.push_back(AgentSpec{"robot", Point{5, 5}, 0.0, 100.0});
  return env;
}

inline Trajectory random_trajectory(Rng& rng, const Environment& env, int waypoints) {
  Trajectory traj;
  const double horizon = rng.uniform(5.0, 12.0);
  for (const auto& agent : env.agents) {
    std::vector<double> cum{0.0};
    for (int i = 1; i < waypoints; ++i) cum.push_back(cum.back() + rng.uniform(0.4, 1.6));
    std::vector<TimedPoint> pts;
    pts.push_back(TimedPoint{agent.start.x, agent.start.y, 0});
    for (int i = 1; i < waypoints; ++i) {
      pts.push_back(TimedPoint{rng.uniform(env.workspace.x_min, env.workspace.x_max),
                               rng.uniform(env.workspace.y_min, env.workspace.y_max),
                               horizon * cum[i] / cum.back()});
    }
    traj.agents[agent.name] = std::move(pts);
  }
  return traj;
}

}  // namespace testsupport
