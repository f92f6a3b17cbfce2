#include <iostream>

#include "commands.hpp"
#include "lqf/error.hpp"

int main(int argc, char** argv) {
  using namespace lqf::cli;
  CLI::App app{"Finite orthomodular lattices, LQF conditions, proof checking and matrix checks", "lqf"};
  app.require_subcommand(1);
  std::string format = "human";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();

  Action action;
  add_lattice_commands(app, action);
  add_logic_commands(app, action);
  add_lqf_commands(app, action);
  add_filter_commands(app, action);
  add_matrix_commands(app, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  if (!action) {
    std::cerr << app.help();
    return kUsage;
  }
  Options opt;
  opt.json = format == "json";
  try {
    return action(opt, std::cout, std::cerr);
  } catch (const lqf::Error& e) {
    std::cerr << "lqf: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "lqf: " << e.what() << "\n";
  }
  return kUsage;
}
