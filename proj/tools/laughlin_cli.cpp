// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line driver: laughlin <command> [--config FILE] [--set section.key=value]...

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "laughlin/commands.hpp"
#include "laughlin/config.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

std::string help_footer() {
  std::ostringstream out;
  out << "\nCommands:\n";
  for (const auto& name : laughlin::command_names()) {
    out << "  " << name << std::string(10 - name.size(), ' ') << laughlin::command_summary(name) << '\n';
  }
  out << "\nConfig keys and defaults (INI sections; lists are space separated):\n\n";
  laughlin::RunConfig{}.write(out);
  out << "\nExit codes: 0 success, 2 configuration error, 3 numerical failure.\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laughlin-state parent Hamiltonian, variational ansatz and circuit toolkit"};
  app.footer(help_footer());
  app.set_version_flag("--version", LAUGHLIN_VERSION);

  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out;

  app.add_option("command", command, "pipeline stage")
      ->required()
      ->check(CLI::IsMember(laughlin::command_names()));
  app.add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
  app.add_option("--set", overrides, "override a key, e.g. --set system.n_electrons=8");
  app.add_option("--seed", seed, "seed for the optimizer and sampler");
  app.add_option("--threads", threads, "OpenMP threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    auto config = config_path.empty() ? laughlin::RunConfig{} : laughlin::RunConfig::load(config_path);
    for (const auto& o : overrides) config.set(o);
    if (seed) config.apply_seed(*seed);
    if (threads) config.threads = *threads;
    if (out) config.out = *out;
    laughlin::run_command(command, config, std::cerr);
  } catch (const laughlin::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const laughlin::ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << " (best residual " << e.best_residual()
              << ")\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
  return 0;
}
