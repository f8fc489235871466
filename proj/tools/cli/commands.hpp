#pragma once

#include <optional>
#include <string>

#include "cli/config.hpp"
#include "cli/svg.hpp"
#include "json.hpp"

namespace harmlab::cli {

// Exit codes of the harmlab executable.
enum ExitCode : int { kOk = 0, kUncertified = 2, kDegenerate = 3, kNumerical = 4 };

struct CommandResult {
    nlohmann::json report;
    std::optional<std::string> svg;
    int exit_code = kOk;
};

// Dispatches on config.command: roots, construct, experiment, caustic,
// newton, two-zero-search, render. Library errors propagate.
CommandResult run_command(const RunConfig& config);

// Report for an Error escaping run_command, with its exit code.
CommandResult error_result(const RunConfig& config, const std::exception& e);

// Figure presets paper-fig-1 .. paper-fig-5.
FigureSpec paper_figure(const std::string& preset, std::uint64_t seed);

}  // namespace harmlab::cli
