#pragma once

#include <string>

#include "qfi/evolution.hpp"
#include "qfi/io.hpp"

namespace qfi {

// Subcommand drivers. Each writes its artifacts into out_dir (created if
// absent) and throws ConfigError for configuration problems, anything else
// for runtime failures.
void cmd_sample(const RunConfig& cfg, const std::string& out_dir);
void cmd_fit(const RunConfig& cfg, const std::string& bins_csv_path, const std::string& out_dir);
void cmd_evolve(const RunConfig& cfg, ObjectiveMode mode, const std::string& curve_path,
                const std::string& out_dir);
void cmd_compare(const RunConfig& cfg, const std::string& curve_path, const std::string& out_dir);

// Full argv entry point. Exit codes: 0 success, 1 runtime failure,
// 2 configuration error.
int run_cli(int argc, const char* const* argv);

}  // namespace qfi
