#pragma once

#include <string>

#include "autotamp/milp/model.hpp"

namespace autotamp::milp {

// CPLEX-style LP text (Maximize / Subject To / Bounds / Binaries / End).
// Variable names are sanitized to LP-safe characters and round-trip through
// import_lp_text.
std::string export_lp_text(const MilpModel& model);

// The sanitized, de-duplicated variable names export_lp_text writes, indexed
// by variable id.
std::vector<std::string> lp_export_names(const MilpModel& model);

// Reads the subset of the LP format that export_lp_text emits (plus the usual
// spelling variants). Throws std::invalid_argument on anything else.
MilpModel import_lp_text(const std::string& text);

}  // namespace autotamp::milp
