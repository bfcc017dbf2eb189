#pragma once

#include <vector>

#include "autotamp/milp/model.hpp"

namespace autotamp::milp {

// Pure LP in bounded-variable form, maximization. Used internally by the
// branch-and-bound driver and directly by the LP unit tests.
struct LpProblem {
  std::vector<double> lower;      // per variable, may be -inf
  std::vector<double> upper;      // per variable, may be +inf
  std::vector<double> objective;  // maximize c.x
  struct Row {
    std::vector<Term> terms;
    Sense sense = Sense::LessEqual;
    double rhs = 0;
  };
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(lower.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

// Column states: structural and slack columns alike. Fixed means lower==upper.
enum class ColState : unsigned char { Basic, AtLower, AtUpper, FreeAtZero };

// Basis + nonbasic states; enough to warm-start a re-solve after bound
// changes.
struct LpBasis {
  std::vector<int> basic;        // one column per row
  std::vector<ColState> states;  // one per column (structural + slack)
  bool valid() const { return !basic.empty(); }
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;  // structural variables only
  double objective = 0;
  long iterations = 0;
  LpBasis basis;
  double max_residual = 0;  // max constraint/bound violation of the returned point
};

// Bounded-variable primal simplex with an explicit LU-factorized basis and
// product-form updates. Phase 1 minimizes total bound infeasibility of the
// basic variables (no artificial columns), so it can start from any basis.
// Dantzig pricing, switching to Bland's rule after 1000 degenerate pivots.
// Deterministic: ties break toward the lowest column index.
LpResult solve_lp(const LpProblem& lp, const LpBasis* warm = nullptr, long max_iterations = 0);

}  // namespace autotamp::milp
