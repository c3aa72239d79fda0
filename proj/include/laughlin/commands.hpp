// Copyright 2026 The laughlin-hva Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file commands.hpp
 * @brief Pipeline stages behind the command-line driver. Each command writes
 *        its artifacts and a manifest.txt into RunConfig::out.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "laughlin/config.hpp"

namespace laughlin {

[[nodiscard]] const std::vector<std::string>& command_names();

/// One-line description per command, for --help.
[[nodiscard]] std::string command_summary(const std::string& name);

/// Runs a command. Throws ConfigError for bad configuration and
/// ConvergenceError for solver failures; progress goes to `log`.
void run_command(const std::string& name, const RunConfig& config, std::ostream& log);

void cmd_ed(const RunConfig& config, std::ostream& log);
void cmd_prepare(const RunConfig& config, std::ostream& log);
void cmd_optimize(const RunConfig& config, std::ostream& log);
void cmd_circuit(const RunConfig& config, std::ostream& log);
void cmd_sample(const RunConfig& config, std::ostream& log);
void cmd_entropy(const RunConfig& config, std::ostream& log);
void cmd_krylov(const RunConfig& config, std::ostream& log);
void cmd_sweep(const RunConfig& config, std::ostream& log);

}  // namespace laughlin
