#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "repadvice/cli/settings.hpp"
#include "repadvice/cli/table.hpp"

// Command-line front end: figure data, single-point rule choice, simulation
// and equilibrium reports.
namespace repadvice::cli {

inline constexpr std::string_view kToolName = "repadvice";
inline constexpr std::string_view kVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitInfeasible = 3 };

struct CommandSpec {
  std::string name;
  std::string description;
  Settings defaults;  // every key the command accepts, with its default
};

const std::vector<CommandSpec>& commands();
const CommandSpec& find_command(const std::string& name);

// Built-in defaults, overlaid by the config file, overlaid by flags. Config
// keys the command does not use are ignored.
Settings resolve_settings(const CommandSpec& command, const Settings& from_config,
                          const Settings& from_flags);

// Evaluates a command on fully resolved settings. Warnings go to `warnings`.
Table run_command(const std::string& command, const Settings& resolved, std::ostream& warnings);

// Meta block of the JSON output: tool, version, command and the resolved
// settings that determine the rows (the worker count does not).
nlohmann::ordered_json make_meta(const std::string& command, const Settings& resolved);

// Full CLI: parses `args` (without the program name), writes the table to
// `out` or to --out, diagnostics to `err`, and returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace repadvice::cli
