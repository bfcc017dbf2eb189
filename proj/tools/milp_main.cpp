#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "autotamp/milp/lp_format.hpp"
#include "autotamp/milp/model.hpp"

using namespace autotamp::milp;

int main(int argc, char** argv) {
  CLI::App app{"mixed-integer solver over LP files"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "solve an LP-format file with the built-in solver");
  std::string path;
  double time_limit = std::numeric_limits<double>::infinity();
  double gap = 1e-6;
  solve_cmd->add_option("file", path, "LP-format input")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--time-limit", time_limit, "seconds");
  solve_cmd->add_option("--gap", gap, "absolute optimality gap");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();

  MilpModel model;
  try {
    model = import_lp_text(buf.str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  SolveConfig config;
  config.time_limit = time_limit;
  config.gap = gap;
  Solution sol = solve(model, config);

  std::cout.precision(17);
  std::cout << "status " << to_string(sol.status) << "\n";
  if (sol.has_values()) {
    std::cout << "objective " << sol.objective_value << "\n";
    const auto names = lp_export_names(model);
    for (int j = 0; j < model.num_variables(); ++j)
      std::cout << names[j] << " " << sol.values[j] << "\n";
  }
  for (const auto& note : sol.notes) std::cerr << "note: " << note << "\n";
  return sol.status == Status::Optimal || sol.status == Status::LimitReached ? 0 : 1;
}
