#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include "autotamp/milp/lp_format.hpp"
#include "autotamp/milp/model.hpp"
#include "autotamp/milp/simplex.hpp"

namespace autotamp::milp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;

struct Presolved {
  bool infeasible = false;
  std::vector<double> lower, upper;
  std::vector<char> keep_row;
};

// Bound tightening from singleton rows and activity bounds, binary bound
// rounding, and removal of rows already implied by the bounds.
Presolved presolve(const MilpModel& model) {
  Presolved ps;
  const int n = model.num_variables();
  ps.lower.resize(n);
  ps.upper.resize(n);
  for (int j = 0; j < n; ++j) {
    ps.lower[j] = model.variable(j).lower;
    ps.upper[j] = model.variable(j).upper;
  }
  ps.keep_row.assign(model.num_constraints(), 1);

  auto round_binaries = [&]() {
    for (int j = 0; j < n; ++j) {
      if (model.variable(j).kind != VarKind::Binary) continue;
      if (ps.lower[j] > kIntTol) ps.lower[j] = 1;
      else if (ps.lower[j] > 0) ps.lower[j] = 0;
      if (ps.upper[j] < 1 - kIntTol) ps.upper[j] = 0;
      else if (ps.upper[j] < 1) ps.upper[j] = 1;
    }
  };
  round_binaries();

  for (int pass = 0; pass < 20; ++pass) {
    bool changed = false;
    for (int r = 0; r < model.num_constraints(); ++r) {
      if (!ps.keep_row[r]) continue;
      const Constraint& row = model.constraints()[r];
      double min_act = 0, max_act = 0;
      for (const Term& t : row.terms) {
        const double lo = ps.lower[t.var], hi = ps.upper[t.var];
        if (t.coeff >= 0) {
          min_act += t.coeff * lo;
          max_act += t.coeff * hi;
        } else {
          min_act += t.coeff * hi;
          max_act += t.coeff * lo;
        }
      }
      const bool need_le = row.sense != Sense::GreaterEqual;
      const bool need_ge = row.sense != Sense::LessEqual;
      if (need_le && min_act > row.rhs + 1e-9) {
        ps.infeasible = true;
        return ps;
      }
      if (need_ge && max_act < row.rhs - 1e-9) {
        ps.infeasible = true;
        return ps;
      }
      const bool le_redundant = !need_le || max_act <= row.rhs + 1e-12;
      const bool ge_redundant = !need_ge || min_act >= row.rhs - 1e-12;
      if (le_redundant && ge_redundant) {
        ps.keep_row[r] = 0;
        changed = true;
        continue;
      }
      if (row.terms.size() == 1) {
        const Term& t = row.terms[0];
        const double b = row.rhs / t.coeff;
        const bool upper_bound = (row.sense == Sense::LessEqual) == (t.coeff > 0);
        if (row.sense == Sense::Equal) {
          if (b > ps.lower[t.var] + 1e-12) ps.lower[t.var] = b, changed = true;
          if (b < ps.upper[t.var] - 1e-12) ps.upper[t.var] = b, changed = true;
        } else if (upper_bound) {
          if (b < ps.upper[t.var] - 1e-12) ps.upper[t.var] = b, changed = true;
        } else {
          if (b > ps.lower[t.var] + 1e-12) ps.lower[t.var] = b, changed = true;
        }
        ps.keep_row[r] = 0;
        changed = true;
      }
    }
    round_binaries();
    for (int j = 0; j < n; ++j) {
      if (ps.lower[j] > ps.upper[j] + 1e-9) {
        ps.infeasible = true;
        return ps;
      }
      if (ps.lower[j] > ps.upper[j]) ps.lower[j] = ps.upper[j];
    }
    if (!changed) break;
  }
  return ps;
}

struct NodeRecord {
  int parent = -1;
  int branch_var = -1;
  double blo = 0, bhi = 0;
  double bound = kInf;  // parent LP objective (valid upper bound)
  LpBasis basis;
};

struct OpenNode {
  double bound;
  long id;
  bool operator<(const OpenNode& o) const {
    if (bound != o.bound) return bound < o.bound;  // max-heap on bound
    return id > o.id;                              // then FIFO
  }
};

double frac_dist(double v) { return std::abs(v - std::llround(v)); }

}  // namespace

Solution BuiltinSolver::solve(const MilpModel& model, const SolveConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  Solution sol;
  const int n = model.num_variables();
  const bool maximize = model.objective().sense == ObjSense::Maximize;

  Presolved ps = presolve(model);
  if (ps.infeasible) {
    sol.status = Status::Infeasible;
    sol.wall_time = elapsed();
    return sol;
  }

  // Internal LP always maximizes.
  LpProblem lp;
  lp.lower = ps.lower;
  lp.upper = ps.upper;
  lp.objective.assign(n, 0.0);
  for (const Term& t : model.objective().terms) lp.objective[t.var] += maximize ? t.coeff : -t.coeff;
  for (int r = 0; r < model.num_constraints(); ++r) {
    if (!ps.keep_row[r]) continue;
    const Constraint& row = model.constraints()[r];
    lp.rows.push_back(LpProblem::Row{row.terms, row.sense, row.rhs});
  }

  std::vector<int> binaries;
  for (int j = 0; j < n; ++j)
    if (model.variable(j).kind == VarKind::Binary) binaries.push_back(j);

  std::vector<NodeRecord> records;
  records.push_back(NodeRecord{});  // root
  std::priority_queue<OpenNode> open;
  open.push(OpenNode{kInf, 0});

  std::vector<double> incumbent;
  double incumbent_obj = -kInf;
  double best_bound_seen = kInf;
  bool hit_limit = false;
  bool root_unbounded = false;

  auto apply_bounds = [&](int node_id) {
    lp.lower = ps.lower;
    lp.upper = ps.upper;
    for (int cur = node_id; cur > 0; cur = records[cur].parent) {
      const NodeRecord& rec = records[cur];
      lp.lower[rec.branch_var] = std::max(lp.lower[rec.branch_var], rec.blo);
      lp.upper[rec.branch_var] = std::min(lp.upper[rec.branch_var], rec.bhi);
    }
  };

  auto integral = [&](const std::vector<double>& x) {
    for (int j : binaries)
      if (frac_dist(x[j]) > kIntTol) return false;
    return true;
  };

  auto consider_incumbent = [&](const std::vector<double>& x, double obj) {
    if (obj > incumbent_obj + 1e-12 || incumbent.empty()) {
      incumbent = x;
      for (int j : binaries) incumbent[j] = std::llround(incumbent[j]);
      incumbent_obj = obj;
    }
  };

  while (!open.empty()) {
    if (elapsed() > config.time_limit) {
      hit_limit = true;
      break;
    }
    OpenNode top = open.top();
    open.pop();
    if (!incumbent.empty() && top.bound <= incumbent_obj + config.gap) continue;
    const int node_id = static_cast<int>(top.id);

    apply_bounds(node_id);
    const LpBasis* warm = records[node_id].basis.valid() ? &records[node_id].basis : nullptr;
    LpResult lr = solve_lp(lp, warm);
    ++sol.node_count;
    sol.lp_iterations += lr.iterations;

    if (lr.status == LpStatus::Infeasible) continue;
    if (lr.status == LpStatus::Unbounded) {
      if (node_id == 0) root_unbounded = true;
      // An unbounded node relaxation makes the MILP unbounded as well once
      // any integral completion exists; report it as unbounded outright.
      root_unbounded = true;
      break;
    }
    if (lr.status == LpStatus::IterationLimit) {
      sol.notes.push_back("lp iteration limit at node " + std::to_string(node_id));
      hit_limit = true;
      continue;
    }
    if (!incumbent.empty() && lr.objective <= incumbent_obj + config.gap) continue;

    if (integral(lr.x)) {
      consider_incumbent(lr.x, lr.objective);
      continue;
    }

    // Rounding dive: fix every binary at its rounded LP value and re-solve
    // the continuous part; an early incumbent sharpens best-bound pruning.
    if (!binaries.empty()) {
      std::vector<double> save_lo = lp.lower, save_hi = lp.upper;
      bool consistent = true;
      for (int j : binaries) {
        const double v = std::llround(lr.x[j]);
        if (v < lp.lower[j] - 0.5 || v > lp.upper[j] + 0.5) {
          consistent = false;
          break;
        }
        lp.lower[j] = lp.upper[j] = v;
      }
      if (consistent) {
        LpResult dive = solve_lp(lp, &lr.basis);
        sol.lp_iterations += dive.iterations;
        if (dive.status == LpStatus::Optimal) consider_incumbent(dive.x, dive.objective);
      }
      lp.lower = std::move(save_lo);
      lp.upper = std::move(save_hi);
      if (!incumbent.empty() && lr.objective <= incumbent_obj + config.gap) continue;
    }

    // Branch on the most fractional binary; ties break to the lowest id.
    int branch = -1;
    double best_frac = kIntTol;
    for (int j : binaries) {
      const double d = frac_dist(lr.x[j]);
      if (d > best_frac + 1e-15) {
        best_frac = d;
        branch = j;
      }
    }
    if (branch < 0) {
      consider_incumbent(lr.x, lr.objective);  // numerically integral
      continue;
    }
    for (int side = 0; side < 2; ++side) {
      NodeRecord rec;
      rec.parent = node_id;
      rec.branch_var = branch;
      rec.blo = side == 0 ? 0 : 1;
      rec.bhi = side == 0 ? 0 : 1;
      rec.bound = lr.objective;
      rec.basis = lr.basis;
      records.push_back(std::move(rec));
      open.push(OpenNode{lr.objective, static_cast<long>(records.size() - 1)});
    }
  }

  if (root_unbounded) {
    sol.status = Status::Unbounded;
    sol.wall_time = elapsed();
    return sol;
  }

  if (incumbent.empty()) {
    sol.status = hit_limit ? Status::LimitReached : Status::Infeasible;
    sol.wall_time = elapsed();
    return sol;
  }

  sol.status = hit_limit ? Status::LimitReached : Status::Optimal;
  if (hit_limit && !open.empty()) {
    best_bound_seen = open.top().bound;
    sol.notes.push_back("remaining bound " + std::to_string(best_bound_seen));
  }
  sol.values = incumbent;
  double obj = 0;
  for (const Term& t : model.objective().terms) obj += t.coeff * incumbent[t.var];
  sol.objective_value = obj;

  // Residual verification of the reported point.
  double worst = 0;
  std::string worst_row;
  for (int r = 0; r < model.num_constraints(); ++r) {
    const Constraint& row = model.constraints()[r];
    double act = 0;
    for (const Term& t : row.terms) act += t.coeff * incumbent[t.var];
    double viol = 0;
    if (row.sense != Sense::GreaterEqual) viol = std::max(viol, act - row.rhs);
    if (row.sense != Sense::LessEqual) viol = std::max(viol, row.rhs - act);
    if (viol > worst) {
      worst = viol;
      worst_row = row.name.empty() ? "c" + std::to_string(r) : row.name;
    }
  }
  if (worst > 1e-6) {
    sol.notes.push_back("constraint '" + worst_row + "' violated by " + std::to_string(worst));
    if (config.big_m_check)
      sol.notes.push_back("big-M check: violation suggests an indicator constant is too small");
  }
  sol.wall_time = elapsed();
  return sol;
}

Solution solve(const MilpModel& model, const SolveConfig& config) {
  BuiltinSolver solver;
  return solver.solve(model, config);
}

Solution ExternalLpSolver::solve(const MilpModel& model, const SolveConfig& config) {
  (void)config;
  namespace fs = std::filesystem;
  static std::atomic<int> counter{0};
  const fs::path path = fs::temp_directory_path() /
                        ("autotamp_" + std::to_string(::getpid()) + "_" +
                         std::to_string(counter.fetch_add(1)) + ".lp");
  {
    std::ofstream out(path);
    out << export_lp_text(model);
  }
  Solution sol;
  const std::string cmd = command_ + " " + path.string();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    std::error_code ec;
    fs::remove(path, ec);
    sol.notes.push_back("failed to start external solver: " + cmd);
    sol.status = Status::LimitReached;
    return sol;
  }
  std::string output;
  char buf[4096];
  while (size_t got = ::fread(buf, 1, sizeof(buf), pipe)) output.append(buf, got);
  const int rc = ::pclose(pipe);
  std::error_code ec;
  fs::remove(path, ec);
  if (rc != 0) sol.notes.push_back("external solver exited with status " + std::to_string(rc));

  std::map<std::string, int> ids;
  const std::vector<std::string> names = lp_export_names(model);
  for (int j = 0; j < model.num_variables(); ++j) {
    ids[model.variable_name(j)] = j;
    ids[names[j]] = j;
  }

  sol.values.assign(model.num_variables(), 0.0);
  bool any_value = false;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "status") {
      std::string s;
      ls >> s;
      if (s == "optimal") sol.status = Status::Optimal;
      else if (s == "infeasible") sol.status = Status::Infeasible;
      else if (s == "unbounded") sol.status = Status::Unbounded;
      else sol.status = Status::LimitReached;
      continue;
    }
    if (key == "objective") {
      ls >> sol.objective_value;
      continue;
    }
    auto it = ids.find(key);
    if (it != ids.end()) {
      double v;
      if (ls >> v) {
        sol.values[it->second] = v;
        any_value = true;
      }
    }
  }
  if (!any_value && sol.status != Status::Optimal) sol.values.clear();
  return sol;
}

}  // namespace autotamp::milp
