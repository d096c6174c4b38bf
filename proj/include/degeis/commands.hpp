// Experiment drivers behind the command-line tool. Each command writes a CSV
// whose first line is "# degeis version=V config_hash=H seed=S command=C",
// followed by a fixed column header and data rows.
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "degeis/run_config.hpp"

namespace degeis {

enum ExitCode : int { kExitPass = 0, kExitTolerance = 1, kExitConfig = 2 };

std::string code_version();

// Runs cfg.command. Returns kExitPass or kExitTolerance; configuration and
// precondition problems raise ConfigError.
int run_command(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

// The same, mapping ConfigError and rejected preconditions to kExitConfig.
int run_command_safely(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

const std::vector<std::string>& command_names();

}  // namespace degeis
