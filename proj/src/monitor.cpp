#include "autotamp/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace autotamp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Grid {
  double step = 0.1;
  double final_time = 0;
  int last = 0;  // indices run 0..last

  double time_at(int j) const { return std::min(j * step, final_time); }
  // Window [t+a, t+b] in index space at index i; outward snapping.
  int lo_index(int i, double a) const { return i + static_cast<int>(std::floor(a / step + 1e-9)); }
  int hi_index(int i, double b) const {
    if (std::isinf(b)) return last;
    return std::min(last, i + static_cast<int>(std::ceil(b / step - 1e-9)));
  }
};

struct Context {
  const Trajectory& traj;
  const Environment& env;
  Grid grid;
  // positions[agent][j]
  std::vector<std::vector<Point>> positions;
  std::vector<double> half_widths;
};

std::vector<double> eval(const StlFormula& f, const Context& ctx);

std::vector<double> eval_predicate(const StlFormula& f, const Context& ctx) {
  auto regions = ctx.env.resolve_region(f.region);
  const int n = ctx.grid.last + 1;
  std::vector<double> out(n, -kInf);
  for (int j = 0; j < n; ++j) {
    double best = -kInf;  // some agent inside some region of the group
    for (size_t k = 0; k < ctx.positions.size(); ++k) {
      for (const Region* r : regions) {
        best = std::max(best, signed_distance(*r, ctx.positions[k][j], ctx.half_widths[k]));
      }
    }
    out[j] = (f.action == Action::Enter) ? best : -best;
  }
  return out;
}

std::vector<double> eval(const StlFormula& f, const Context& ctx) {
  const int n = ctx.grid.last + 1;
  switch (f.kind) {
    case StlKind::Predicate:
      return eval_predicate(f, ctx);
    case StlKind::Not: {
      auto c = eval(*f.left, ctx);
      for (auto& v : c) v = -v;
      return c;
    }
    case StlKind::And:
    case StlKind::Or: {
      auto l = eval(*f.left, ctx);
      auto r = eval(*f.right, ctx);
      for (int j = 0; j < n; ++j) l[j] = f.kind == StlKind::And ? std::min(l[j], r[j]) : std::max(l[j], r[j]);
      return l;
    }
    case StlKind::Imply: {
      auto l = eval(*f.left, ctx);
      auto r = eval(*f.right, ctx);
      for (int j = 0; j < n; ++j) l[j] = std::max(-l[j], r[j]);
      return l;
    }
    case StlKind::Equiv: {
      auto l = eval(*f.left, ctx);
      auto r = eval(*f.right, ctx);
      for (int j = 0; j < n; ++j) l[j] = std::min(std::max(-l[j], r[j]), std::max(-r[j], l[j]));
      return l;
    }
    case StlKind::Finally:
    case StlKind::Globally: {
      auto c = eval(*f.left, ctx);
      std::vector<double> out(n);
      const bool is_f = f.kind == StlKind::Finally;
      for (int i = 0; i < n; ++i) {
        int lo = std::max(0, ctx.grid.lo_index(i, f.interval.lower));
        int hi = ctx.grid.hi_index(i, f.interval.upper);
        double acc = is_f ? -kInf : kInf;
        for (int j = lo; j <= hi; ++j) acc = is_f ? std::max(acc, c[j]) : std::min(acc, c[j]);
        out[i] = acc;
      }
      return out;
    }
    case StlKind::Until: {
      auto l = eval(*f.left, ctx);
      auto r = eval(*f.right, ctx);
      std::vector<double> out(n);
      for (int i = 0; i < n; ++i) {
        int lo = std::max(i, ctx.grid.lo_index(i, f.interval.lower));
        int hi = ctx.grid.hi_index(i, f.interval.upper);
        double best = -kInf;
        double prefix = kInf;  // min of l over [i, tau)
        int tau = i;
        for (; tau <= hi; ++tau) {
          if (tau >= lo) best = std::max(best, std::min(r[tau], prefix));
          prefix = std::min(prefix, l[tau]);
        }
        out[i] = best;
      }
      return out;
    }
  }
  throw std::logic_error("eval: unreachable");
}

Context make_context(const Trajectory& traj, const Environment& env, const MonitorOptions& opts) {
  if (traj.empty()) throw std::invalid_argument("monitor: empty trajectory");
  if (opts.step <= 0) throw std::invalid_argument("monitor: step must be positive");
  Context ctx{traj, env};
  ctx.grid.step = opts.step;
  ctx.grid.final_time = traj.final_time();
  ctx.grid.last = std::max(0, static_cast<int>(std::ceil(ctx.grid.final_time / opts.step - 1e-9)));
  for (const auto& [name, pts] : traj.agents) {
    std::vector<Point> pos(ctx.grid.last + 1);
    for (int j = 0; j <= ctx.grid.last; ++j) pos[j] = interpolate(traj, name, ctx.grid.time_at(j));
    ctx.positions.push_back(std::move(pos));
    const AgentSpec* spec = env.find_agent(name);
    ctx.half_widths.push_back(spec ? spec->half_width : 0.0);
  }
  return ctx;
}

}  // namespace

double aligned_monitor_step(double dt, double target) {
  if (dt <= 0) return target;
  const int k = std::max(1, static_cast<int>(std::ceil(dt / target - 1e-9)));
  return dt / k;
}

std::vector<double> robustness_signal(const StlFormula& f, const Trajectory& traj,
                                      const Environment& env, const MonitorOptions& opts) {
  auto diags = validate(f, env);
  if (!diags.empty()) throw std::invalid_argument("monitor: formula does not validate:\n" + render(diags));
  Context ctx = make_context(traj, env, opts);
  return eval(f, ctx);
}

double robustness(const StlFormula& f, const Trajectory& traj, const Environment& env, double t,
                  const MonitorOptions& opts) {
  auto sig = robustness_signal(f, traj, env, opts);
  const double final_time = traj.final_time();
  if (t < -1e-9 || t > final_time + 1e-9)
    throw std::out_of_range("monitor: t=" + format_number(t) + " outside [0, " + format_number(final_time) + "]");
  int idx = static_cast<int>(std::llround(t / opts.step));
  idx = std::clamp(idx, 0, static_cast<int>(sig.size()) - 1);
  return sig[idx];
}

bool satisfied(const StlFormula& f, const Trajectory& traj, const Environment& env,
               const MonitorOptions& opts) {
  if (!check_kinematics(traj, env).empty()) return false;
  return robustness(f, traj, env, 0.0, opts) >= -1e-6;
}

StateSequence state_sequence(const Trajectory& traj, const Environment& env,
                             const MonitorOptions& opts) {
  StateSequence seq;
  if (traj.empty()) return seq;
  Context ctx = make_context(traj, env, opts);
  size_t k = 0;
  for (const auto& [name, pts] : traj.agents) {
    std::vector<StateEntry> entries;
    for (int j = 0; j <= ctx.grid.last; ++j) {
      const Point p = ctx.positions[k][j];
      const Region* innermost = nullptr;
      for (const auto& r : env.regions) {
        if (signed_distance(r, p, 0.0) < 0) continue;
        if (!innermost || r.rect.area() < innermost->rect.area() ||
            (r.rect.area() == innermost->rect.area() && r.name < innermost->name)) {
          innermost = &r;
        }
      }
      std::string where = innermost ? innermost->name : "open_space";
      if (entries.empty() || entries.back().region != where)
        entries.push_back(StateEntry{std::move(where), ctx.grid.time_at(j)});
    }
    seq.agents[name] = std::move(entries);
    ++k;
  }
  return seq;
}

std::string render_state_sequence(const StateSequence& seq) {
  auto render_one = [](const std::vector<StateEntry>& entries) {
    std::string out = "[";
    for (size_t i = 0; i < entries.size(); ++i) {
      if (i) out += ", ";
      out += "[in(" + entries[i].region + "), " + format_number(entries[i].entry_time) + "]";
    }
    out += "]";
    return out;
  };
  if (seq.agents.size() == 1) return render_one(seq.agents.begin()->second);
  std::string out;
  for (const auto& [name, entries] : seq.agents) {
    if (!out.empty()) out += "\n";
    out += name + ": " + render_one(entries);
  }
  return out;
}

}  // namespace autotamp
