#include "autotamp/environment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "autotamp/stl.hpp"
#include "json.hpp"

namespace autotamp {

using nlohmann::json;

std::vector<const Region*> Environment::resolve_region(const std::string& name) const {
  std::string key = normalize_region_name(name);
  std::vector<const Region*> out;
  for (const auto& r : regions)
    if (normalize_region_name(r.name) == key) out.push_back(&r);
  if (!out.empty()) return out;
  for (const auto& r : regions) {
    auto it = r.attributes.find("group");
    if (it != r.attributes.end() && normalize_region_name(it->second) == key) out.push_back(&r);
  }
  return out;
}

const AgentSpec* Environment::find_agent(const std::string& name) const {
  for (const auto& a : agents)
    if (a.name == name) return &a;
  return nullptr;
}

std::vector<const Region*> Environment::wall_regions() const {
  std::vector<const Region*> out;
  for (const auto& r : regions)
    if (r.is_wall()) out.push_back(&r);
  return out;
}

double Trajectory::final_time() const {
  double t = 0;
  for (const auto& [name, pts] : agents)
    if (!pts.empty()) t = std::max(t, pts.back().t);
  return t;
}

double signed_distance(const Rect& r, Point p, double inflation) {
  const double lo_x = r.x_min + inflation, hi_x = r.x_max - inflation;
  const double lo_y = r.y_min + inflation, hi_y = r.y_max - inflation;
  const double ex = std::max(lo_x - p.x, p.x - hi_x);
  const double ey = std::max(lo_y - p.y, p.y - hi_y);
  return -std::max(ex, ey);
}

Point interpolate(const Trajectory& traj, const std::string& agent, double t) {
  auto it = traj.agents.find(agent);
  if (it == traj.agents.end() || it->second.empty())
    throw std::invalid_argument("interpolate: unknown agent '" + agent + "'");
  const auto& pts = it->second;
  if (t < pts.front().t - 1e-9 || t > pts.back().t + 1e-9)
    throw std::out_of_range("interpolate: t=" + format_number(t) + " outside trajectory span");
  if (t <= pts.front().t) return {pts.front().x, pts.front().y};
  if (t >= pts.back().t) return {pts.back().x, pts.back().y};
  // First segment whose right endpoint is at or past t.
  size_t hi = 1;
  while (hi < pts.size() && pts[hi].t < t) ++hi;
  const TimedPoint& a = pts[hi - 1];
  const TimedPoint& b = pts[hi];
  const double u = (t - a.t) / (b.t - a.t);
  return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
}

std::vector<Diagnostic> validate_trajectory(const Trajectory& traj, const Environment& env) {
  std::vector<Diagnostic> diags;
  double final_t = -1;
  for (const auto& [name, pts] : traj.agents) {
    if (pts.empty()) {
      diags.push_back(make_error(DiagCode::SchemaError, "agent '" + name + "' has no waypoints"));
      continue;
    }
    for (size_t i = 1; i < pts.size(); ++i)
      if (pts[i].t <= pts[i - 1].t) {
        diags.push_back(make_error(DiagCode::InvariantViolation,
                                   "agent '" + name + "' timestamps not strictly increasing at index " +
                                       std::to_string(i)));
        break;
      }
    if (std::abs(pts.front().t) > 1e-9)
      diags.push_back(make_error(DiagCode::InvariantViolation,
                                 "agent '" + name + "' does not start at t=0"));
    if (final_t < 0) final_t = pts.back().t;
    else if (std::abs(final_t - pts.back().t) > 1e-9)
      diags.push_back(make_error(DiagCode::InvariantViolation,
                                 "agents end at different final times"));
    if (const AgentSpec* spec = env.find_agent(name)) {
      if (std::hypot(pts.front().x - spec->start.x, pts.front().y - spec->start.y) > 1e-6)
        diags.push_back(make_error(DiagCode::InvariantViolation,
                                   "agent '" + name + "' first waypoint differs from its start"));
    }
  }
  return diags;
}

std::vector<Diagnostic> check_kinematics(const Trajectory& traj, const Environment& env) {
  std::vector<Diagnostic> diags;
  for (const auto& [name, pts] : traj.agents) {
    const AgentSpec* spec = env.find_agent(name);
    const double v_max = spec ? spec->v_max : std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < pts.size(); ++i) {
      const double dt = pts[i].t - pts[i - 1].t;
      if (dt <= 0) continue;  // validate_trajectory reports ordering problems
      const double speed = std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y) / dt;
      if (speed > v_max + 1e-6) {
        diags.push_back(make_error(
            DiagCode::SpeedViolation,
            "agent '" + name + "' segment " + std::to_string(i - 1) + " speed " + format_number(speed) +
                " exceeds v_max " + format_number(v_max)));
      }
    }
  }
  if (std::isfinite(env.time_limit) && traj.final_time() > env.time_limit + 1e-9) {
    diags.push_back(make_error(DiagCode::TimeLimitViolation,
                               "final time " + format_number(traj.final_time()) +
                                   " exceeds time limit " + format_number(env.time_limit)));
  }
  return diags;
}

namespace {

bool read_rect(const json& j, Rect& out) {
  if (!j.is_array() || j.size() != 4) return false;
  for (const auto& v : j)
    if (!v.is_number()) return false;
  out = Rect{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
  return true;
}

}  // namespace

EnvLoadResult load_environment(const std::string& text) {
  EnvLoadResult out;
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    out.diagnostics.push_back(make_error(DiagCode::SchemaError, "environment file is not a JSON object"));
    return out;
  }
  Environment env;
  if (!j.contains("workspace") || !read_rect(j["workspace"], env.workspace) || !env.workspace.valid()) {
    out.diagnostics.push_back(make_error(DiagCode::SchemaError,
                                         "'workspace' must be [x_min, x_max, y_min, y_max] with positive extent"));
    return out;
  }
  if (j.contains("time_limit")) {
    const auto& tl = j["time_limit"];
    if (tl.is_number()) env.time_limit = tl.get<double>();
    else if (tl.is_string() && (tl.get<std::string>() == "inf" || tl.get<std::string>() == "infinite"))
      env.time_limit = std::numeric_limits<double>::infinity();
    else {
      out.diagnostics.push_back(make_error(DiagCode::SchemaError, "'time_limit' must be a number or \"inf\""));
    }
    if (env.time_limit <= 0) {
      out.diagnostics.push_back(make_error(DiagCode::InvariantViolation, "'time_limit' must be positive"));
    }
  }
  for (const auto& rj : j.value("regions", json::array())) {
    Region r;
    r.name = normalize_region_name(rj.value("name", ""));
    if (r.name.empty()) {
      out.diagnostics.push_back(make_error(DiagCode::SchemaError, "region without a name"));
      continue;
    }
    if (!rj.contains("rect") || !read_rect(rj["rect"], r.rect)) {
      out.diagnostics.push_back(make_error(DiagCode::SchemaError, "region '" + r.name + "' missing rect"));
      continue;
    }
    if (!r.rect.valid()) {
      out.diagnostics.push_back(make_error(DiagCode::InvariantViolation,
                                           "region '" + r.name + "' has x_min >= x_max or y_min >= y_max"));
      continue;
    }
    if (!env.workspace.contains_rect(r.rect)) {
      out.diagnostics.push_back(make_error(DiagCode::InvariantViolation,
                                           "region '" + r.name + "' lies outside the workspace"));
    }
    const json attrs = rj.value("attributes", json::object());
    for (auto it = attrs.begin(); it != attrs.end(); ++it) {
      r.attributes[it.key()] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    }
    for (const auto& other : env.regions) {
      if (other.name == r.name) {
        out.diagnostics.push_back(make_error(DiagCode::InvariantViolation,
                                             "duplicate region name '" + r.name + "'"));
        break;
      }
    }
    env.regions.push_back(std::move(r));
  }
  for (const auto& aj : j.value("agents", json::array())) {
    AgentSpec a;
    a.name = aj.value("name", "");
    if (a.name.empty()) {
      out.diagnostics.push_back(make_error(DiagCode::SchemaError, "agent without a name"));
      continue;
    }
    const auto& st = aj.value("start", json::array());
    if (!st.is_array() || st.size() != 2 || !st[0].is_number() || !st[1].is_number()) {
      out.diagnostics.push_back(make_error(DiagCode::SchemaError, "agent '" + a.name + "' missing start [x, y]"));
      continue;
    }
    a.start = Point{st[0].get<double>(), st[1].get<double>()};
    a.half_width = aj.value("half_width", 0.0);
    a.v_max = aj.value("v_max", 1.0);
    if (a.half_width < 0)
      out.diagnostics.push_back(make_error(DiagCode::InvariantViolation, "agent '" + a.name + "' half_width < 0"));
    if (a.v_max <= 0)
      out.diagnostics.push_back(make_error(DiagCode::InvariantViolation, "agent '" + a.name + "' v_max <= 0"));
    if (signed_distance(env.workspace, a.start, a.half_width) < 0)
      out.diagnostics.push_back(make_error(DiagCode::InvariantViolation,
                                           "agent '" + a.name + "' start outside the workspace"));
    env.agents.push_back(std::move(a));
  }
  for (size_t i = 0; i < env.agents.size(); ++i)
    for (size_t k = i + 1; k < env.agents.size(); ++k) {
      const auto& a = env.agents[i];
      const auto& b = env.agents[k];
      const double sep = std::max(std::abs(a.start.x - b.start.x), std::abs(a.start.y - b.start.y));
      if (sep < a.half_width + b.half_width)
        out.diagnostics.push_back(make_error(DiagCode::InvariantViolation,
                                             "agents '" + a.name + "' and '" + b.name + "' start overlapping"));
    }
  for (const auto& d : out.diagnostics)
    if (d.severity == Severity::Error) return out;
  out.environment = std::move(env);
  return out;
}

std::string save_environment(const Environment& env) {
  json j;
  j["workspace"] = {env.workspace.x_min, env.workspace.x_max, env.workspace.y_min, env.workspace.y_max};
  if (std::isfinite(env.time_limit)) j["time_limit"] = env.time_limit;
  else j["time_limit"] = "inf";
  j["regions"] = json::array();
  for (const auto& r : env.regions) {
    json rj;
    rj["name"] = r.name;
    rj["rect"] = {r.rect.x_min, r.rect.x_max, r.rect.y_min, r.rect.y_max};
    rj["attributes"] = r.attributes;
    j["regions"].push_back(rj);
  }
  j["agents"] = json::array();
  for (const auto& a : env.agents) {
    json aj;
    aj["name"] = a.name;
    aj["start"] = {a.start.x, a.start.y};
    aj["half_width"] = a.half_width;
    aj["v_max"] = a.v_max;
    j["agents"].push_back(aj);
  }
  return j.dump(2);
}

Trajectory load_trajectory(const std::string& text) {
  json j = json::parse(text);
  Trajectory traj;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::vector<TimedPoint> pts;
    for (const auto& p : it.value()) {
      if (!p.is_array() || p.size() != 3) throw std::invalid_argument("trajectory sample must be [x, y, t]");
      pts.push_back(TimedPoint{p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    traj.agents[it.key()] = std::move(pts);
  }
  return traj;
}

std::string save_trajectory(const Trajectory& traj) {
  json j = json::object();
  for (const auto& [name, pts] : traj.agents) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({p.x, p.y, p.t});
    j[name] = arr;
  }
  return j.dump(2);
}

}  // namespace autotamp
