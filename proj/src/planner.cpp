#include "autotamp/planner.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace autotamp {

namespace {

using milp::MilpModel;
using milp::Sense;
using milp::Term;

constexpr double kPi = 3.14159265358979323846;

struct AgentRegion {
  int agent;
  const Region* region;
};

class Encoder {
 public:
  Encoder(const Environment& env, const PlanConfig& cfg) : env_(env), cfg_(cfg) {
    n_ = cfg.steps;
    dt_ = cfg.horizon / cfg.steps;
    const double diag = std::hypot(env.workspace.width(), env.workspace.height());
    big_m_cap_ = cfg.big_m > 0 ? cfg.big_m : 2.0 * diag;
  }

  CompileResult take() {
    CompileResult out;
    out.model = std::move(model_);
    out.vars = std::move(vars_);
    out.diagnostics = std::move(diags_);
    return out;
  }

  void setup_motion() {
    vars_.steps = n_;
    vars_.dt = dt_;
    vars_.horizon = cfg_.horizon;
    vars_.margin = model_.add_continuous(0.0, cfg_.robustness_margin, "s");
    std::vector<Term> objective{{vars_.margin, 1.0}};

    const Rect& ws = env_.workspace;
    for (size_t k = 0; k < env_.agents.size(); ++k) {
      const AgentSpec& agent = env_.agents[k];
      vars_.agent_names.push_back(agent.name);
      std::vector<int> xs(n_ + 1), ys(n_ + 1);
      for (int i = 0; i <= n_; ++i) {
        double lo_x = ws.x_min + agent.half_width, hi_x = ws.x_max - agent.half_width;
        double lo_y = ws.y_min + agent.half_width, hi_y = ws.y_max - agent.half_width;
        if (i == 0) {
          lo_x = hi_x = agent.start.x;
          lo_y = hi_y = agent.start.y;
        }
        xs[i] = model_.add_continuous(lo_x, hi_x, "x(" + agent.name + "," + std::to_string(i) + ")");
        ys[i] = model_.add_continuous(lo_y, hi_y, "y(" + agent.name + "," + std::to_string(i) + ")");
      }

      // Speed: inscribed regular octagon of the reachable disk, so every
      // feasible step keeps the Euclidean speed at or below v_max.
      const double reach = agent.v_max * dt_ * std::cos(kPi / 8.0);
      for (int i = 0; i < n_; ++i) {
        for (int t = 0; t < 8; ++t) {
          const double c = std::cos(t * kPi / 4.0), s = std::sin(t * kPi / 4.0);
          std::vector<Term> terms;
          if (std::abs(c) > 1e-12) {
            terms.push_back({xs[i + 1], c});
            terms.push_back({xs[i], -c});
          }
          if (std::abs(s) > 1e-12) {
            terms.push_back({ys[i + 1], s});
            terms.push_back({ys[i], -s});
          }
          model_.add_constraint(std::move(terms), Sense::LessEqual, reach);
        }
        // Path-length proxy: m bounds the L-infinity displacement.
        const int m = model_.add_continuous(0.0, agent.v_max * dt_ + 1.0,
                                            "m(" + agent.name + "," + std::to_string(i) + ")");
        model_.add_constraint({{m, 1.0}, {xs[i + 1], -1.0}, {xs[i], 1.0}}, Sense::GreaterEqual, 0);
        model_.add_constraint({{m, 1.0}, {xs[i + 1], 1.0}, {xs[i], -1.0}}, Sense::GreaterEqual, 0);
        model_.add_constraint({{m, 1.0}, {ys[i + 1], -1.0}, {ys[i], 1.0}}, Sense::GreaterEqual, 0);
        model_.add_constraint({{m, 1.0}, {ys[i + 1], 1.0}, {ys[i], -1.0}}, Sense::GreaterEqual, 0);
        objective.push_back({m, -cfg_.secondary_objective_weight});
      }
      vars_.x.push_back(std::move(xs));
      vars_.y.push_back(std::move(ys));
    }

    if (cfg_.collision && env_.agents.size() > 1) {
      for (int i = 0; i <= n_; ++i) {
        for (size_t a = 0; a < env_.agents.size(); ++a) {
          for (size_t b = a + 1; b < env_.agents.size(); ++b) {
            const double sep = env_.agents[a].half_width + env_.agents[b].half_width;
            if (sep <= 0) continue;
            std::vector<int> ds;
            for (int f = 0; f < 4; ++f) {
              ds.push_back(model_.add_binary("coll(" + std::to_string(a) + "," + std::to_string(b) +
                                             "," + std::to_string(i) + "," + std::to_string(f) + ")"));
              vars_.face_binaries.push_back(ds.back());
            }
            indicator_ge({{vars_.x[a][i], 1.0}, {vars_.x[b][i], -1.0}}, sep, ds[0]);
            indicator_ge({{vars_.x[b][i], 1.0}, {vars_.x[a][i], -1.0}}, sep, ds[1]);
            indicator_ge({{vars_.y[a][i], 1.0}, {vars_.y[b][i], -1.0}}, sep, ds[2]);
            indicator_ge({{vars_.y[b][i], 1.0}, {vars_.y[a][i], -1.0}}, sep, ds[3]);
            model_.add_constraint({{ds[0], 1.0}, {ds[1], 1.0}, {ds[2], 1.0}, {ds[3], 1.0}},
                                  Sense::GreaterEqual, 1.0);
          }
        }
      }
    }

    model_.set_objective(milp::ObjSense::Maximize, std::move(objective));
  }

  // gate: -1 enforces unconditionally, otherwise a binary id whose value 1
  // activates the requirement.
  void require(const StlFormula& f, int step, int gate, bool neg) {
    switch (f.kind) {
      case StlKind::Predicate:
        require_predicate(f, step, gate, neg);
        return;
      case StlKind::Not:
        require(*f.left, step, gate, !neg);
        return;
      case StlKind::And:
      case StlKind::Or: {
        const bool conjunctive = (f.kind == StlKind::And) != neg;
        if (conjunctive) {
          require(*f.left, step, gate, neg);
          require(*f.right, step, gate, neg);
        } else {
          const int zl = encode(*f.left, step, neg);
          const int zr = encode(*f.right, step, neg);
          disjunction_row({zl, zr}, gate);
        }
        return;
      }
      case StlKind::Imply:
      case StlKind::Equiv:
        throw std::logic_error("planner: Imply/Equiv must be rewritten before encoding");
      case StlKind::Finally:
      case StlKind::Globally: {
        const bool universal = (f.kind == StlKind::Globally) != neg;
        int alpha, beta;
        if (!window(f.interval, step, &alpha, &beta)) {
          if (universal) return;  // vacuously true on an empty window
          empty_window_error(f.interval, step);
          if (gate >= 0) force_zero(gate);
          return;
        }
        if (universal) {
          hold_range(*f.left, alpha, beta, gate, neg);
        } else {
          std::vector<int> zs;
          for (int tau = alpha; tau <= beta; ++tau) zs.push_back(encode(*f.left, tau, neg));
          disjunction_row(zs, gate);
        }
        return;
      }
      case StlKind::Until:
        if (!neg) require_until(f, step, gate);
        else require_not_until(f, step, gate);
        return;
    }
  }

 private:
  double activity_bound(const std::vector<Term>& terms, bool maximize) const {
    double acc = 0;
    for (const Term& t : terms) {
      const auto& v = model_.variable(t.var);
      const double b = (t.coeff >= 0) == maximize ? v.upper : v.lower;
      acc += t.coeff * b;
    }
    return acc;
  }

  // sum(terms) >= rhs, enforced when gate is active.
  void indicator_ge(std::vector<Term> terms, double rhs, int gate) {
    if (gate < 0) {
      model_.add_constraint(std::move(terms), Sense::GreaterEqual, rhs);
      return;
    }
    double m = rhs - activity_bound(terms, false);
    if (m <= 0) return;  // holds everywhere in the box
    m = std::min(m, big_m_cap_);
    terms.push_back({gate, -m});
    model_.add_constraint(std::move(terms), Sense::GreaterEqual, rhs - m);
  }

  // sum(terms) <= rhs, enforced when gate is active.
  void indicator_le(std::vector<Term> terms, double rhs, int gate) {
    if (gate < 0) {
      model_.add_constraint(std::move(terms), Sense::LessEqual, rhs);
      return;
    }
    double m = activity_bound(terms, true) - rhs;
    if (m <= 0) return;
    m = std::min(m, big_m_cap_);
    terms.push_back({gate, m});
    model_.add_constraint(std::move(terms), Sense::LessEqual, rhs + m);
  }

  // sum(options) >= 1 when gate is active.
  void disjunction_row(const std::vector<int>& options, int gate) {
    std::vector<Term> terms;
    for (int z : options) terms.push_back({z, 1.0});
    if (gate < 0) {
      model_.add_constraint(std::move(terms), Sense::GreaterEqual, 1.0);
    } else {
      terms.push_back({gate, -1.0});
      model_.add_constraint(std::move(terms), Sense::GreaterEqual, 0.0);
    }
  }

  void force_zero(int var) { model_.add_constraint({{var, 1.0}}, Sense::LessEqual, 0.0); }

  void point_inside(const AgentRegion& p, int step, int gate) {
    const double hw = env_.agents[p.agent].half_width;
    const Rect& r = p.region->rect;
    const int x = vars_.x[p.agent][step], y = vars_.y[p.agent][step];
    indicator_ge({{x, 1.0}, {vars_.margin, -1.0}}, r.x_min + hw, gate);
    indicator_le({{x, 1.0}, {vars_.margin, 1.0}}, r.x_max - hw, gate);
    indicator_ge({{y, 1.0}, {vars_.margin, -1.0}}, r.y_min + hw, gate);
    indicator_le({{y, 1.0}, {vars_.margin, 1.0}}, r.y_max - hw, gate);
  }

  // Avoidance machinery is shared: one cached indicator per (agent, region,
  // step or segment), so overlapping Until prefixes and Globally windows
  // reuse the same face binaries.

  // Indicator: agent clear of the inflated region at the step.
  int point_avoid(const AgentRegion& p, int step) {
    const auto key = std::make_tuple(p.agent, p.region, step);
    auto it = point_avoid_cache_.find(key);
    if (it != point_avoid_cache_.end()) return it->second;
    const double hw = env_.agents[p.agent].half_width;
    const Rect& r = p.region->rect;
    const int x = vars_.x[p.agent][step], y = vars_.y[p.agent][step];
    const int po = model_.add_binary("avoid(" + p.region->name + "," + std::to_string(p.agent) + "," +
                                     std::to_string(step) + ")");
    vars_.aggregation_binaries.push_back(po);
    std::vector<int> ds;
    for (int f = 0; f < 4; ++f) {
      ds.push_back(model_.add_binary("out(" + p.region->name + "," + std::to_string(p.agent) + "," +
                                     std::to_string(step) + "," + std::to_string(f) + ")"));
      vars_.face_binaries.push_back(ds.back());
    }
    indicator_le({{x, 1.0}, {vars_.margin, 1.0}}, r.x_min - hw, ds[0]);
    indicator_ge({{x, 1.0}, {vars_.margin, -1.0}}, r.x_max + hw, ds[1]);
    indicator_le({{y, 1.0}, {vars_.margin, 1.0}}, r.y_min - hw, ds[2]);
    indicator_ge({{y, 1.0}, {vars_.margin, -1.0}}, r.y_max + hw, ds[3]);
    disjunction_row(ds, po);
    point_avoid_cache_.emplace(key, po);
    return po;
  }

  // Indicator: segment seg -> seg+1 entirely clear of the inflated region,
  // via one shared separating face for both endpoints.
  int segment_avoid(const AgentRegion& p, int seg) {
    const auto key = std::make_tuple(p.agent, p.region, seg);
    auto it = segment_avoid_cache_.find(key);
    if (it != segment_avoid_cache_.end()) return it->second;
    const double hw = env_.agents[p.agent].half_width;
    const Rect& r = p.region->rect;
    const int x0 = vars_.x[p.agent][seg], y0 = vars_.y[p.agent][seg];
    const int x1 = vars_.x[p.agent][seg + 1], y1 = vars_.y[p.agent][seg + 1];
    const int sa = model_.add_binary("segavoid(" + p.region->name + "," + std::to_string(p.agent) + "," +
                                     std::to_string(seg) + ")");
    vars_.aggregation_binaries.push_back(sa);
    std::vector<int> es;
    for (int f = 0; f < 4; ++f) {
      es.push_back(model_.add_binary("seg(" + p.region->name + "," + std::to_string(p.agent) + "," +
                                     std::to_string(seg) + "," + std::to_string(f) + ")"));
      vars_.face_binaries.push_back(es.back());
    }
    indicator_le({{x0, 1.0}, {vars_.margin, 1.0}}, r.x_min - hw, es[0]);
    indicator_le({{x1, 1.0}, {vars_.margin, 1.0}}, r.x_min - hw, es[0]);
    indicator_ge({{x0, 1.0}, {vars_.margin, -1.0}}, r.x_max + hw, es[1]);
    indicator_ge({{x1, 1.0}, {vars_.margin, -1.0}}, r.x_max + hw, es[1]);
    indicator_le({{y0, 1.0}, {vars_.margin, 1.0}}, r.y_min - hw, es[2]);
    indicator_le({{y1, 1.0}, {vars_.margin, 1.0}}, r.y_min - hw, es[2]);
    indicator_ge({{y0, 1.0}, {vars_.margin, -1.0}}, r.y_max + hw, es[3]);
    indicator_ge({{y1, 1.0}, {vars_.margin, -1.0}}, r.y_max + hw, es[3]);
    disjunction_row(es, sa);
    segment_avoid_cache_.emplace(key, sa);
    return sa;
  }

  void require_indicator(int z, int gate) {
    if (gate < 0) model_.add_constraint({{z, 1.0}}, Sense::GreaterEqual, 1.0);
    else model_.add_constraint({{z, 1.0}, {gate, -1.0}}, Sense::GreaterEqual, 0.0);
  }

  void point_outside(const AgentRegion& p, int step, int gate) {
    require_indicator(point_avoid(p, step), gate);
  }

  void segment_outside(const AgentRegion& p, int seg, int gate) {
    require_indicator(segment_avoid(p, seg), gate);
  }

  std::vector<AgentRegion> pairs_for(const StlFormula& pred) {
    std::vector<AgentRegion> out;
    for (const Region* r : env_.resolve_region(pred.region))
      for (size_t k = 0; k < env_.agents.size(); ++k)
        out.push_back(AgentRegion{static_cast<int>(k), r});
    return out;
  }

  void require_predicate(const StlFormula& f, int step, int gate, bool neg) {
    const bool enter = (f.action == Action::Enter) != neg;
    auto pairs = pairs_for(f);
    if (pairs.empty()) throw std::invalid_argument("planner: unresolved region '" + f.region + "'");
    if (enter) {
      if (pairs.size() == 1) {
        point_inside(pairs[0], step, gate);
        return;
      }
      std::vector<int> us;
      for (const auto& p : pairs) {
        const int u = model_.add_binary("in(" + p.region->name + "," + std::to_string(p.agent) + "," +
                                        std::to_string(step) + ")");
        vars_.predicate_binaries.push_back(u);
        point_inside(p, step, u);
        us.push_back(u);
      }
      disjunction_row(us, gate);
    } else {
      for (const auto& p : pairs) point_outside(p, step, gate);
    }
  }

  // f at every step of [alpha, beta]; continuous time in between is covered
  // for avoidance atoms by shared-face segments and for enter atoms by
  // rectangle convexity. Other shapes fall back to per-step indicators.
  void hold_range(const StlFormula& f, int alpha, int beta, int gate, bool neg) {
    switch (f.kind) {
      case StlKind::Not:
        hold_range(*f.left, alpha, beta, gate, !neg);
        return;
      case StlKind::Predicate: {
        const bool enter = (f.action == Action::Enter) != neg;
        auto pairs = pairs_for(f);
        if (pairs.empty()) throw std::invalid_argument("planner: unresolved region '" + f.region + "'");
        if (!enter) {
          for (const auto& p : pairs) {
            if (beta > alpha)
              for (int j = alpha; j < beta; ++j) segment_outside(p, j, gate);
            else point_outside(p, alpha, gate);
          }
          return;
        }
        if (pairs.size() == 1) {
          for (int i = alpha; i <= beta; ++i) point_inside(pairs[0], i, gate);
          return;
        }
        break;
      }
      case StlKind::And:
      case StlKind::Or:
        if ((f.kind == StlKind::And) != neg) {
          hold_range(*f.left, alpha, beta, gate, neg);
          hold_range(*f.right, alpha, beta, gate, neg);
          return;
        }
        break;
      case StlKind::Finally:
      case StlKind::Globally:
        if ((f.kind == StlKind::Globally) != neg) {
          // Union of the per-step windows; contiguous because each is.
          const int ca = alpha + offset_low(f.interval);
          const int cb = std::min(n_, beta + offset_high(f.interval));
          if (ca <= cb && ca <= n_) hold_range(*f.left, ca, cb, gate, neg);
          return;
        }
        break;
      default:
        break;
    }
    for (int i = alpha; i <= beta; ++i) {
      const int z = encode(f, i, neg);
      if (gate < 0) model_.add_constraint({{z, 1.0}}, Sense::GreaterEqual, 1.0);
      else model_.add_constraint({{z, 1.0}, {gate, -1.0}}, Sense::GreaterEqual, 0.0);
    }
  }

  int encode(const StlFormula& f, int step, bool neg) {
    const auto key = std::make_tuple(&f, step, neg);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    int z;
    if (f.kind == StlKind::Predicate) {
      z = model_.add_binary("z(" + std::string(neg ? "not_" : "") + f.region + "," +
                            std::to_string(step) + ")");
      vars_.predicate_binaries.push_back(z);
    } else {
      z = model_.add_binary("agg(" + std::to_string(step) + "_" +
                            std::to_string(model_.num_variables()) + ")");
      vars_.aggregation_binaries.push_back(z);
    }
    cache_.emplace(key, z);
    require(f, step, z, neg);
    return z;
  }

  int offset_low(const TimeInterval& w) const {
    return static_cast<int>(std::ceil(w.lower / dt_ - 1e-9));
  }
  int offset_high(const TimeInterval& w) const {
    if (w.upper_unbounded()) return n_;
    return static_cast<int>(std::floor(w.upper / dt_ + 1e-9));
  }

  bool window(const TimeInterval& w, int at, int* alpha, int* beta) const {
    *alpha = at + offset_low(w);
    *beta = std::min(n_, at + offset_high(w));
    return *alpha <= *beta && *alpha <= n_;
  }

  void empty_window_error(const TimeInterval& w, int at) {
    diags_.push_back(make_error(
        DiagCode::EmptyWindow,
        "interval [" + format_number(w.lower) + ", " +
            (w.upper_unbounded() ? std::string("infinite") : format_number(w.upper)) +
            "] maps to an empty step window at step " + std::to_string(at) + " (dt " +
            format_number(dt_) + ", horizon " + format_number(cfg_.horizon) + ")"));
  }

  void require_until(const StlFormula& f, int step, int gate) {
    int alpha, beta;
    if (!window(f.interval, step, &alpha, &beta)) {
      empty_window_error(f.interval, step);
      if (gate >= 0) force_zero(gate);
      return;
    }
    std::vector<int> selectors;
    for (int tau = alpha; tau <= beta; ++tau) {
      const int a = model_.add_binary("until(" + std::to_string(step) + "," + std::to_string(tau) + ")");
      vars_.aggregation_binaries.push_back(a);
      const int psi = encode(*f.right, tau, false);
      model_.add_constraint({{psi, 1.0}, {a, -1.0}}, Sense::GreaterEqual, 0.0);
      if (tau > step) hold_range(*f.left, step, tau, a, false);
      selectors.push_back(a);
    }
    disjunction_row(selectors, gate);
  }

  // not (phi U psi): every window step needs (not psi) there or an escape
  // (not phi) strictly earlier; escapes accumulate along a monotone chain.
  void require_not_until(const StlFormula& f, int step, int gate) {
    int alpha, beta;
    if (!window(f.interval, step, &alpha, &beta)) return;  // vacuously true
    std::vector<int> escaped(static_cast<size_t>(beta) + 1, -1);
    int prev = -1;
    for (int tau = step + 1; tau <= beta; ++tau) {
      const int e = model_.add_binary("esc(" + std::to_string(step) + "," + std::to_string(tau) + ")");
      vars_.aggregation_binaries.push_back(e);
      const int not_phi_prev = encode(*f.left, tau - 1, true);
      if (prev < 0) {
        model_.add_constraint({{e, 1.0}, {not_phi_prev, -1.0}}, Sense::LessEqual, 0.0);
      } else {
        model_.add_constraint({{e, 1.0}, {prev, -1.0}, {not_phi_prev, -1.0}}, Sense::LessEqual, 0.0);
      }
      escaped[tau] = e;
      prev = e;
    }
    for (int tau = std::max(alpha, step); tau <= beta; ++tau) {
      const int not_psi = encode(*f.right, tau, true);
      std::vector<Term> terms{{not_psi, 1.0}};
      if (tau <= beta && tau < static_cast<int>(escaped.size()) && escaped[tau] >= 0)
        terms.push_back({escaped[tau], 1.0});
      if (gate < 0) {
        model_.add_constraint(std::move(terms), Sense::GreaterEqual, 1.0);
      } else {
        terms.push_back({gate, -1.0});
        model_.add_constraint(std::move(terms), Sense::GreaterEqual, 0.0);
      }
    }
  }

  const Environment& env_;
  const PlanConfig& cfg_;
  int n_;
  double dt_;
  double big_m_cap_;
  MilpModel model_;
  VarMap vars_;
  std::vector<Diagnostic> diags_;
  std::map<std::tuple<const StlFormula*, int, bool>, int> cache_;
  std::map<std::tuple<int, const Region*, int>, int> point_avoid_cache_;
  std::map<std::tuple<int, const Region*, int>, int> segment_avoid_cache_;
};

PlanConfig normalized_config(const Environment& env, const PlanConfig& cfg) {
  PlanConfig out = cfg;
  if (out.horizon <= 0) out.horizon = std::isfinite(env.time_limit) ? env.time_limit : 20.0;
  if (std::isfinite(env.time_limit)) out.horizon = std::min(out.horizon, env.time_limit);
  if (out.steps < 2) out.steps = 2;
  return out;
}

}  // namespace

CompileResult compile(const StlFormula& f, const Environment& env, const PlanConfig& cfg_in) {
  const PlanConfig cfg = normalized_config(env, cfg_in);
  auto diags = validate(f, env);
  if (!diags.empty()) {
    CompileResult out;
    out.diagnostics = std::move(diags);
    return out;
  }
  Encoder enc(env, cfg);
  enc.setup_motion();
  const StlPtr nnf = to_nnf(f);
  enc.require(*nnf, 0, -1, false);
  return enc.take();
}

PlanResult plan(const StlFormula& f, const Environment& env, const PlanConfig& cfg_in) {
  const PlanConfig cfg = normalized_config(env, cfg_in);
  PlanResult out;
  CompileResult comp = compile(f, env, cfg);
  if (!comp.ok()) {
    out.diagnostics = std::move(comp.diagnostics);
    return out;
  }
  milp::SolveConfig sc;
  sc.time_limit = cfg.solve_time_limit;
  sc.gap = cfg.solve_gap;
  out.solution = milp::solve(comp.model, sc);
  if (!out.solution.has_values()) {
    out.diagnostics.push_back(make_error(
        DiagCode::Infeasible,
        "no satisfying trajectory: solver status " + to_string(out.solution.status) + " (steps " +
            std::to_string(cfg.steps) + ", horizon " + format_number(cfg.horizon) + ")"));
    return out;
  }
  Trajectory traj;
  const VarMap& vm = comp.vars;
  for (size_t k = 0; k < vm.agent_names.size(); ++k) {
    std::vector<TimedPoint> pts;
    for (int i = 0; i <= vm.steps; ++i) {
      const double t = i == vm.steps ? vm.horizon : i * vm.dt;
      pts.push_back(TimedPoint{out.solution.values[vm.x[k][i]], out.solution.values[vm.y[k][i]], t});
    }
    traj.agents[vm.agent_names[k]] = std::move(pts);
  }
  out.trajectory = std::move(traj);
  return out;
}

bool executability_check(const std::string& region, double t_rel, Point start,
                         const Environment& env, const PlanConfig& cfg_in) {
  if (t_rel <= 0) return false;
  if (env.agents.empty()) return false;
  Environment probe = env;
  probe.agents.clear();
  AgentSpec agent = env.agents.front();
  agent.start = start;
  probe.agents.push_back(agent);
  probe.time_limit = std::numeric_limits<double>::infinity();

  StlPtr goal = make_finally(TimeInterval::of(t_rel, t_rel), make_enter(region));
  StlPtr formula = goal;
  if (!env.wall_regions().empty())
    formula = make_and(goal, make_globally(TimeInterval::all(), make_not_enter("walls")));

  PlanConfig cfg = cfg_in;
  cfg.horizon = t_rel;
  cfg.collision = false;
  return plan(*formula, probe, cfg).ok();
}

}  // namespace autotamp
