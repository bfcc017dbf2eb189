#include "autotamp/milp/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace autotamp::milp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr double kDegenerateStep = 1e-11;
constexpr int kRefactorInterval = 100;
constexpr int kBlandTrigger = 1000;

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct SparseCol {
  std::vector<int> idx;
  std::vector<double> val;
};

// LU factor of the basis plus a product-form eta file.
class BasisFactor {
 public:
  void factorize(const std::vector<SparseCol>& cols, const std::vector<int>& basic) {
    const int m = static_cast<int>(basic.size());
    MatrixXd B = MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      const SparseCol& c = cols[basic[j]];
      for (size_t k = 0; k < c.idx.size(); ++k) B(c.idx[k], j) = c.val[k];
    }
    lu_.compute(B);
    singular_ = !B.size() ? false : !(std::abs(lu_.determinant()) > 1e-300);
    etas_.clear();
  }

  bool singular() const { return singular_; }
  int eta_count() const { return static_cast<int>(etas_.size()); }

  // B^-1 v
  VectorXd ftran(VectorXd v) const {
    v = lu_.solve(v);
    for (const Eta& e : etas_) {
      const double piv = v(e.row) / e.col(e.row);
      if (piv != 0.0) v -= piv * e.col;
      v(e.row) = piv;
    }
    return v;
  }

  // B^-T v
  VectorXd btran(VectorXd v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const Eta& e = *it;
      const double s = v(e.row) - (e.col.dot(v) - e.col(e.row) * v(e.row));
      v(e.row) = s / e.col(e.row);
    }
    // Solve B^T y = v with PB = LU  =>  B^T = U^T L^T P.
    VectorXd u = lu_.matrixLU().template triangularView<Eigen::Upper>().transpose().solve(v);
    VectorXd t = lu_.matrixLU().template triangularView<Eigen::UnitLower>().transpose().solve(u);
    return lu_.permutationP().transpose() * t;
  }

  void push_eta(int row, VectorXd w) { etas_.push_back(Eta{row, std::move(w)}); }

 private:
  struct Eta {
    int row;
    VectorXd col;  // B^-1 times the incoming column, at insertion time
  };
  Eigen::PartialPivLU<MatrixXd> lu_;
  std::vector<Eta> etas_;
  bool singular_ = false;
};

struct Workspace {
  int n = 0;      // structural columns
  int m = 0;      // rows == slack columns
  int total = 0;  // n + m
  std::vector<SparseCol> cols;
  std::vector<double> lo, hi;
  std::vector<double> cost;  // maximize
  VectorXd rhs;

  std::vector<int> basic;       // row -> column
  std::vector<ColState> state;  // per column
  VectorXd xB;
  BasisFactor factor;

  double nonbasic_value(int j) const {
    switch (state[j]) {
      case ColState::AtLower: return lo[j];
      case ColState::AtUpper: return hi[j];
      case ColState::FreeAtZero: return 0.0;
      case ColState::Basic: break;
    }
    return 0.0;
  }
};

void compute_basics(Workspace& ws) {
  VectorXd r = ws.rhs;
  for (int j = 0; j < ws.total; ++j) {
    if (ws.state[j] == ColState::Basic) continue;
    const double v = ws.nonbasic_value(j);
    if (v == 0.0) continue;
    const SparseCol& c = ws.cols[j];
    for (size_t k = 0; k < c.idx.size(); ++k) r(c.idx[k]) -= c.val[k] * v;
  }
  ws.xB = ws.factor.ftran(std::move(r));
}

Workspace build_workspace(const LpProblem& lp) {
  Workspace ws;
  ws.n = lp.num_vars();
  ws.m = static_cast<int>(lp.rows.size());
  ws.total = ws.n + ws.m;
  ws.cols.resize(ws.total);
  ws.lo.resize(ws.total);
  ws.hi.resize(ws.total);
  ws.cost.assign(ws.total, 0.0);
  ws.rhs = VectorXd::Zero(ws.m);
  for (int j = 0; j < ws.n; ++j) {
    ws.lo[j] = lp.lower[j];
    ws.hi[j] = lp.upper[j];
    ws.cost[j] = lp.objective[j];
  }
  for (int i = 0; i < ws.m; ++i) {
    const auto& row = lp.rows[i];
    for (const Term& t : row.terms) {
      SparseCol& col = ws.cols[t.var];
      // Duplicate mentions of a variable in one row accumulate.
      if (!col.idx.empty() && col.idx.back() == i) col.val.back() += t.coeff;
      else {
        col.idx.push_back(i);
        col.val.push_back(t.coeff);
      }
    }
    const int sj = ws.n + i;
    ws.cols[sj].idx.push_back(i);
    ws.cols[sj].val.push_back(1.0);
    switch (row.sense) {
      case Sense::LessEqual: ws.lo[sj] = 0, ws.hi[sj] = kInf; break;
      case Sense::GreaterEqual: ws.lo[sj] = -kInf, ws.hi[sj] = 0; break;
      case Sense::Equal: ws.lo[sj] = 0, ws.hi[sj] = 0; break;
    }
    ws.rhs(i) = row.rhs;
  }
  return ws;
}

ColState default_state(const Workspace& ws, int j) {
  if (std::isfinite(ws.lo[j])) return ColState::AtLower;
  if (std::isfinite(ws.hi[j])) return ColState::AtUpper;
  return ColState::FreeAtZero;
}

void cold_basis(Workspace& ws) {
  ws.basic.resize(ws.m);
  for (int j = 0; j < ws.total; ++j) ws.state[j] = default_state(ws, j);
  for (int i = 0; i < ws.m; ++i) {
    ws.basic[i] = ws.n + i;
    ws.state[ws.n + i] = ColState::Basic;
  }
  ws.factor.factorize(ws.cols, ws.basic);
}

void install_basis(Workspace& ws, const LpBasis* warm) {
  ws.state.assign(ws.total, ColState::AtLower);
  bool warm_ok = warm != nullptr && warm->valid() &&
                 static_cast<int>(warm->basic.size()) == ws.m &&
                 static_cast<int>(warm->states.size()) == ws.total;
  if (warm_ok) {
    std::vector<char> seen(ws.total, 0);
    for (int c : warm->basic) {
      if (c < 0 || c >= ws.total || seen[c]) {
        warm_ok = false;
        break;
      }
      seen[c] = 1;
    }
    if (warm_ok) {
      ws.basic = warm->basic;
      for (int j = 0; j < ws.total; ++j) {
        ColState s = warm->states[j];
        if (s == ColState::Basic && !seen[j]) s = default_state(ws, j);
        if (s == ColState::AtLower && !std::isfinite(ws.lo[j])) s = default_state(ws, j);
        if (s == ColState::AtUpper && !std::isfinite(ws.hi[j])) s = default_state(ws, j);
        ws.state[j] = s;
      }
      for (int i = 0; i < ws.m; ++i) ws.state[ws.basic[i]] = ColState::Basic;
      ws.factor.factorize(ws.cols, ws.basic);
      if (!ws.factor.singular()) return;
    }
  }
  cold_basis(ws);
}

double infeasibility(const Workspace& ws) {
  double sum = 0;
  for (int i = 0; i < ws.m; ++i) {
    const int j = ws.basic[i];
    const double v = ws.xB(i);
    if (v < ws.lo[j] - kPrimalTol) sum += ws.lo[j] - v;
    else if (v > ws.hi[j] + kPrimalTol) sum += v - ws.hi[j];
  }
  return sum;
}

LpResult run_simplex(const LpProblem& lp, const LpBasis* warm, long max_iterations) {
  LpResult res;
  Workspace ws = build_workspace(lp);
  for (int j = 0; j < ws.total; ++j) {
    if (ws.lo[j] > ws.hi[j]) {
      res.status = LpStatus::Infeasible;
      return res;
    }
  }
  if (max_iterations <= 0) max_iterations = 20000 + 200L * ws.m;
  install_basis(ws, warm);
  compute_basics(ws);

  long iters = 0;
  int degenerate_run = 0;
  bool bland = false;

  while (true) {
    if (iters >= max_iterations) {
      res.status = LpStatus::IterationLimit;
      break;
    }
    if (ws.factor.eta_count() >= kRefactorInterval || ws.factor.singular()) {
      ws.factor.factorize(ws.cols, ws.basic);
      compute_basics(ws);
    }

    const bool phase1 = infeasibility(ws) > kPrimalTol;

    VectorXd cB = VectorXd::Zero(ws.m);
    if (phase1) {
      // Gradient of -(total bound infeasibility) of the basics.
      for (int i = 0; i < ws.m; ++i) {
        const int j = ws.basic[i];
        if (ws.xB(i) < ws.lo[j] - kPrimalTol) cB(i) = 1.0;
        else if (ws.xB(i) > ws.hi[j] + kPrimalTol) cB(i) = -1.0;
      }
    } else {
      for (int i = 0; i < ws.m; ++i) cB(i) = ws.cost[ws.basic[i]];
    }
    VectorXd y = ws.factor.btran(std::move(cB));

    // Pricing: most attractive reduced cost; Bland takes the first improving
    // column after a long degenerate run.
    int enter = -1, dir = 0;
    double best_score = kDualTol;
    for (int j = 0; j < ws.total; ++j) {
      if (ws.state[j] == ColState::Basic || ws.lo[j] == ws.hi[j]) continue;
      double d = phase1 ? 0.0 : ws.cost[j];
      const SparseCol& c = ws.cols[j];
      for (size_t k = 0; k < c.idx.size(); ++k) d -= y(c.idx[k]) * c.val[k];
      int candidate_dir = 0;
      if ((ws.state[j] == ColState::AtLower || ws.state[j] == ColState::FreeAtZero) && d > kDualTol)
        candidate_dir = +1;
      else if ((ws.state[j] == ColState::AtUpper || ws.state[j] == ColState::FreeAtZero) && d < -kDualTol)
        candidate_dir = -1;
      if (candidate_dir == 0) continue;
      if (bland) {
        enter = j;
        dir = candidate_dir;
        break;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        enter = j;
        dir = candidate_dir;
      }
    }

    if (enter < 0) {
      res.status = phase1 ? LpStatus::Infeasible : LpStatus::Optimal;
      break;
    }

    VectorXd a = VectorXd::Zero(ws.m);
    for (size_t k = 0; k < ws.cols[enter].idx.size(); ++k)
      a(ws.cols[enter].idx[k]) = ws.cols[enter].val[k];
    VectorXd w = ws.factor.ftran(std::move(a));

    // Ratio test. Basic i moves at rate delta_i = -dir * w_i per unit step of
    // the entering variable. A basic blocks at the first bound ahead of it; a
    // basic already outside a bound and moving back toward it blocks there
    // (it becomes feasible); one moving further away never blocks.
    double t_max = kInf;
    int leave_row = -1;
    double leave_pivot = 0;
    bool leave_at_lower = false;
    const double own_range = ws.hi[enter] - ws.lo[enter];
    if (std::isfinite(own_range)) t_max = own_range;

    for (int i = 0; i < ws.m; ++i) {
      const double delta = -dir * w(i);
      if (std::abs(delta) < kPivotTol) continue;
      const int j = ws.basic[i];
      const double v = ws.xB(i);
      double bound;
      bool at_lower;
      if (delta > 0) {
        if (v > ws.hi[j] + kPrimalTol) continue;  // above upper, moving up
        if (v < ws.lo[j] - kPrimalTol) {
          bound = ws.lo[j];
          at_lower = true;
        } else {
          bound = ws.hi[j];
          at_lower = false;
        }
      } else {
        if (v < ws.lo[j] - kPrimalTol) continue;  // below lower, moving down
        if (v > ws.hi[j] + kPrimalTol) {
          bound = ws.hi[j];
          at_lower = false;
        } else {
          bound = ws.lo[j];
          at_lower = true;
        }
      }
      if (!std::isfinite(bound)) continue;
      const double t = std::max(0.0, (bound - v) / delta);
      const bool better = t < t_max - 1e-12;
      const bool tie = !better && t < t_max + 1e-12 && leave_row >= 0 &&
                       std::abs(w(i)) > std::abs(leave_pivot);
      if (better || tie || (leave_row < 0 && t <= t_max)) {
        t_max = t;
        leave_row = i;
        leave_pivot = w(i);
        leave_at_lower = at_lower;
      }
    }

    if (!std::isfinite(t_max)) {
      // Phase 1 is bounded below, so an unbounded ray can only mean phase 2.
      res.status = LpStatus::Unbounded;
      break;
    }

    ++iters;
    if (t_max < kDegenerateStep) {
      if (++degenerate_run >= kBlandTrigger) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }

    ws.xB -= (t_max * dir) * w;
    if (leave_row < 0) {
      // Bound-to-bound flip of the entering variable.
      ws.state[enter] = dir > 0 ? ColState::AtUpper : ColState::AtLower;
      continue;
    }
    const int leaving = ws.basic[leave_row];
    const double entering_value = ws.nonbasic_value(enter) + t_max * dir;
    ws.state[leaving] = leave_at_lower ? ColState::AtLower : ColState::AtUpper;
    ws.basic[leave_row] = enter;
    ws.state[enter] = ColState::Basic;
    ws.xB(leave_row) = entering_value;
    ws.factor.push_eta(leave_row, std::move(w));
  }

  res.iterations = iters;

  // Recompute the final point from a fresh factorization so eta drift never
  // reaches the caller.
  ws.factor.factorize(ws.cols, ws.basic);
  if (!ws.factor.singular()) compute_basics(ws);
  std::vector<double> full(ws.total, 0.0);
  for (int j = 0; j < ws.total; ++j)
    if (ws.state[j] != ColState::Basic) full[j] = ws.nonbasic_value(j);
  for (int i = 0; i < ws.m; ++i) full[ws.basic[i]] = ws.xB(i);

  res.x.assign(full.begin(), full.begin() + ws.n);
  res.objective = 0;
  for (int j = 0; j < ws.n; ++j) res.objective += ws.cost[j] * full[j];
  res.basis.basic = ws.basic;
  res.basis.states = ws.state;

  double max_res = 0;
  for (int i = 0; i < ws.m; ++i) {
    double act = 0;
    for (const Term& t : lp.rows[i].terms) act += t.coeff * full[t.var];
    switch (lp.rows[i].sense) {
      case Sense::LessEqual: max_res = std::max(max_res, act - lp.rows[i].rhs); break;
      case Sense::GreaterEqual: max_res = std::max(max_res, lp.rows[i].rhs - act); break;
      case Sense::Equal: max_res = std::max(max_res, std::abs(act - lp.rows[i].rhs)); break;
    }
  }
  for (int j = 0; j < ws.n; ++j) {
    if (std::isfinite(lp.lower[j])) max_res = std::max(max_res, lp.lower[j] - full[j]);
    if (std::isfinite(lp.upper[j])) max_res = std::max(max_res, full[j] - lp.upper[j]);
  }
  res.max_residual = max_res;
  return res;
}

}  // namespace

LpResult solve_lp(const LpProblem& lp, const LpBasis* warm, long max_iterations) {
  LpResult res = run_simplex(lp, warm, max_iterations);
  if (res.status == LpStatus::Optimal && res.max_residual > 1e-8) {
    // Rare drift: re-run once from the clean final basis.
    LpResult again = run_simplex(lp, &res.basis, max_iterations);
    again.iterations += res.iterations;
    if (again.max_residual <= res.max_residual) return again;
  }
  return res;
}

}  // namespace autotamp::milp
