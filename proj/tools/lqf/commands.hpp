#pragma once

#include <functional>
#include <iosfwd>

#include <CLI11.hpp>

#include "support.hpp"

namespace lqf::cli {

using Action = std::function<int(const Options&, std::ostream& out, std::ostream& err)>;

/// Selects `f` as the action to run once parsing succeeds.
template <class F>
void bind(CLI::App* sub, Action& action, F f) {
  sub->callback([&action, f] { action = f; });
}

void add_lattice_commands(CLI::App& app, Action& action);
void add_logic_commands(CLI::App& app, Action& action);
void add_lqf_commands(CLI::App& app, Action& action);
void add_filter_commands(CLI::App& app, Action& action);
void add_matrix_commands(CLI::App& app, Action& action);

}  // namespace lqf::cli
