#include "autotamp/scenarios.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

#include "autotamp/llm.hpp"
#include "json.hpp"

namespace autotamp {

using nlohmann::json;

std::string scenario_data_dir() {
  if (const char* env = std::getenv("AUTOTAMP_SCENARIO_DIR"); env && *env) return env;
#ifdef AUTOTAMP_SCENARIO_DIR
  return AUTOTAMP_SCENARIO_DIR;
#else
  return "scenarios";
#endif
}

namespace {

Environment load_env_file(const std::string& path) {
  auto result = load_environment(load_text_file(path));
  if (!result.ok())
    throw std::runtime_error("bad environment file " + path + ":\n" + render(result.diagnostics));
  return *result.environment;
}

StlPtr parse_gt(const std::string& preorder, const std::string& where) {
  auto r = parse_preorder(preorder);
  if (!r.ok()) throw std::runtime_error("bad ground-truth STL in " + where + ":\n" + render(r.diagnostics));
  return r.formula;
}

std::vector<ScenarioCase> load_dir_cases(const std::string& dir) {
  std::vector<ScenarioCase> out;
  const std::string base = scenario_data_dir() + "/" + dir;
  Environment env = load_env_file(base + "/environment.json");
  json spec = json::parse(load_text_file(base + "/cases.json"));
  for (const auto& cj : spec.at("cases")) {
    ScenarioCase c;
    c.scenario = cj.at("scenario").get<std::string>();
    c.name = cj.value("name", c.scenario + "_0");
    c.environment = env;
    c.instruction = cj.at("instruction").get<std::string>();
    c.ground_truth_stl = parse_gt(cj.at("stl_preorder").get<std::string>(), base);
    if (cj.contains("plan")) {
      const auto& pj = cj["plan"];
      c.plan_hint.steps = pj.value("steps", c.plan_hint.steps);
      c.plan_hint.horizon = pj.value("horizon", c.plan_hint.horizon);
      c.plan_hint.robustness_margin = pj.value("robustness_margin", c.plan_hint.robustness_margin);
    }
    c.time_limit = env.time_limit;
    out.push_back(std::move(c));
  }
  return out;
}

// HouseWorld2's limit: duration of the reference trajectory (the ground-truth
// plan with no time limit) traversed at 0.8 * v_max.
double houseworld2_limit(const ScenarioCase& hw1) {
  Environment open = hw1.environment;
  open.time_limit = std::numeric_limits<double>::infinity();
  PlanResult ref = plan(*hw1.ground_truth_stl, open, hw1.plan_hint);
  if (!ref.ok())
    throw std::runtime_error("houseworld reference plan failed:\n" + render(ref.diagnostics));
  const double v = hw1.environment.agents.front().v_max;
  return trajectory_path_length(*ref.trajectory) / (0.8 * v);
}

}  // namespace

double trajectory_path_length(const Trajectory& traj) {
  double len = 0;
  for (const auto& [name, pts] : traj.agents)
    for (size_t i = 1; i < pts.size(); ++i)
      len += std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
  return len;
}

std::vector<ScenarioCase> builtin_cases() {
  static std::vector<ScenarioCase> cached;
  static std::once_flag once;
  std::call_once(once, []() {
    std::vector<ScenarioCase> all;
    for (const std::string dir : {"houseworld", "chips", "overcooked", "rover", "wall"}) {
      auto cases = load_dir_cases(dir);
      all.insert(all.end(), cases.begin(), cases.end());
    }
    // Derive the HouseWorld2 limit from the HouseWorld1 reference.
    const ScenarioCase* hw1 = nullptr;
    for (const auto& c : all)
      if (c.scenario == "houseworld1") hw1 = &c;
    if (hw1) {
      const double limit = houseworld2_limit(*hw1);
      for (auto& c : all) {
        if (c.scenario == "houseworld2") {
          c.time_limit = limit;
          c.environment.time_limit = limit;
          if (c.plan_hint.horizon <= 0 || c.plan_hint.horizon > limit) c.plan_hint.horizon = limit;
        }
      }
    }
    cached = std::move(all);
  });
  return cached;
}

const ScenarioCase& find_case(const std::vector<ScenarioCase>& cases, const std::string& scenario) {
  for (const auto& c : cases)
    if (c.scenario == scenario) return c;
  throw std::out_of_range("no case for scenario '" + scenario + "'");
}

std::vector<std::string> houseworld_instructions() {
  json j = json::parse(load_text_file(scenario_data_dir() + "/houseworld/instructions.json"));
  return j.get<std::vector<std::string>>();
}

ScenarioCase randomize(const ScenarioCase& base, uint64_t seed) {
  ScenarioCase out = base;
  std::mt19937_64 eng(seed ^ 0x5eed5eedULL);
  auto uniform = [&](double a, double b) {
    return a + (b - a) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
  };

  std::vector<const Region*> zones;
  for (const auto& r : base.environment.regions)
    if (r.has_attribute("function", "start_zone")) zones.push_back(&r);

  auto& agents = out.environment.agents;
  for (size_t k = 0; k < agents.size(); ++k) {
    const Rect zone = zones.empty()
                          ? base.environment.workspace
                          : zones[std::min(k, zones.size() - 1)]->rect;
    const double hw = agents[k].half_width;
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      Point p{uniform(zone.x_min + hw, zone.x_max - hw), uniform(zone.y_min + hw, zone.y_max - hw)};
      if (signed_distance(base.environment.workspace, p, hw) < 0) continue;
      bool clear = true;
      for (const auto& r : base.environment.regions) {
        if (r.has_attribute("function", "start_zone")) continue;
        // Start in open space: outside every named region by a small margin.
        if (signed_distance(r, p, -(hw + 0.06)) > 0) {
          clear = false;
          break;
        }
      }
      for (size_t j = 0; j < k && clear; ++j) {
        const double sep = std::max(std::abs(p.x - agents[j].start.x), std::abs(p.y - agents[j].start.y));
        if (sep < agents[j].half_width + hw + 0.1) clear = false;
      }
      if (clear) {
        agents[k].start = p;
        placed = true;
      }
    }
    if (!placed)
      throw std::runtime_error("randomize: no admissible start found for agent '" + agents[k].name +
                               "' after 1000 attempts");
  }
  out.name = base.scenario + "_seed" + std::to_string(seed);
  return out;
}

Environment with_locked_doors(const Environment& env, const std::set<std::string>& visited_regions) {
  Environment out = env;
  for (auto& r : out.regions) {
    auto it = r.attributes.find("locked_by");
    if (it == r.attributes.end()) continue;
    if (visited_regions.count(normalize_region_name(it->second))) continue;
    r.attributes["group"] = "walls";
    r.attributes["function"] = "wall";
  }
  return out;
}

}  // namespace autotamp
