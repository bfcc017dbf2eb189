#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace autotamp::milp {

enum class VarKind { Continuous, Binary };
enum class Sense { LessEqual, Equal, GreaterEqual };
enum class ObjSense { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded, LimitReached };

std::string to_string(Status s);

struct Term {
  int var = -1;
  double coeff = 0;
};

struct Variable {
  int id = -1;
  double lower = 0;
  double upper = 0;
  VarKind kind = VarKind::Continuous;
  std::string name;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0;
  std::string name;
};

struct Objective {
  ObjSense sense = ObjSense::Maximize;
  std::vector<Term> terms;
};

// Solver-agnostic model container. Ids are dense and stable; every term must
// reference a declared variable (checked on insertion).
class MilpModel {
 public:
  int add_variable(double lower, double upper, VarKind kind, std::string name = "");
  int add_continuous(double lower, double upper, std::string name = "") {
    return add_variable(lower, upper, VarKind::Continuous, std::move(name));
  }
  int add_binary(std::string name = "") { return add_variable(0, 1, VarKind::Binary, std::move(name)); }

  void add_constraint(std::vector<Term> terms, Sense sense, double rhs, std::string name = "");
  void set_objective(ObjSense sense, std::vector<Term> terms);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  const Variable& variable(int id) const { return vars_.at(id); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const Objective& objective() const { return obj_; }
  std::string variable_name(int id) const;

 private:
  void check_terms(const std::vector<Term>& terms) const;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  Objective obj_;
};

struct SolveConfig {
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  double gap = 1e-6;                                            // absolute, objective units
  bool big_m_check = false;  // verify the incumbent against the raw rows and note violations
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> values;  // indexed by variable id; empty when no incumbent
  double objective_value = std::numeric_limits<double>::quiet_NaN();
  long node_count = 0;
  long lp_iterations = 0;
  double wall_time = 0;
  std::vector<std::string> notes;

  bool has_values() const { return !values.empty(); }
};

class SolverInterface {
 public:
  virtual ~SolverInterface() = default;
  virtual Solution solve(const MilpModel& model, const SolveConfig& config) = 0;
};

// Exact built-in solver: bound-tightening presolve, dense simplex LP core,
// best-bound branch and bound on the binaries. Deterministic.
class BuiltinSolver : public SolverInterface {
 public:
  Solution solve(const MilpModel& model, const SolveConfig& config) override;
};

Solution solve(const MilpModel& model, const SolveConfig& config = {});

// Reference wiring for driving an external solver through LP files: writes
// the model to a temp .lp file, runs `command <file>`, and parses lines of
// the form "status <word>", "objective <num>", "<varname> <value>" from its
// stdout.
class ExternalLpSolver : public SolverInterface {
 public:
  explicit ExternalLpSolver(std::string command) : command_(std::move(command)) {}
  Solution solve(const MilpModel& model, const SolveConfig& config) override;

 private:
  std::string command_;
};

}  // namespace autotamp::milp
