#include "autotamp/milp/model.hpp"

#include <stdexcept>

namespace autotamp::milp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::LimitReached: return "limit-reached";
  }
  return "unknown";
}

int MilpModel::add_variable(double lower, double upper, VarKind kind, std::string name) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper)
    throw std::invalid_argument("add_variable: bad bounds [" + std::to_string(lower) + ", " +
                                std::to_string(upper) + "]");
  if (kind == VarKind::Binary && (lower < 0 || upper > 1))
    throw std::invalid_argument("add_variable: binary bounds must lie within [0, 1]");
  Variable v;
  v.id = static_cast<int>(vars_.size());
  v.lower = lower;
  v.upper = upper;
  v.kind = kind;
  v.name = std::move(name);
  vars_.push_back(std::move(v));
  return vars_.back().id;
}

void MilpModel::check_terms(const std::vector<Term>& terms) const {
  for (const auto& t : terms) {
    if (t.var < 0 || t.var >= num_variables())
      throw std::out_of_range("unknown variable id " + std::to_string(t.var));
    if (!std::isfinite(t.coeff)) throw std::invalid_argument("non-finite coefficient");
  }
}

void MilpModel::add_constraint(std::vector<Term> terms, Sense sense, double rhs, std::string name) {
  check_terms(terms);
  if (std::isnan(rhs)) throw std::invalid_argument("constraint rhs is NaN");
  rows_.push_back(Constraint{std::move(terms), sense, rhs, std::move(name)});
}

void MilpModel::set_objective(ObjSense sense, std::vector<Term> terms) {
  check_terms(terms);
  obj_ = Objective{sense, std::move(terms)};
}

std::string MilpModel::variable_name(int id) const {
  const Variable& v = variable(id);
  if (!v.name.empty()) return v.name;
  return "v" + std::to_string(id);
}

}  // namespace autotamp::milp
