// commands.hpp — the five qugauge subcommands as pure config -> text functions
// Each command turns a parsed RunConfig into a rendered report or table plus
// an exit code: 0 when every closed-form/oracle delta sits inside its gate,
// 1 when any delta escapes. Invalid requests (missing sections, degenerate
// spectra where a period is required, undefined coupling without the product
// form) surface as exceptions and are mapped to exit code 2 by the driver.

#pragma once

#include <string>

#include "config.hpp"

namespace qugauge::cli {

inline constexpr const char* qugauge_version = "0.1.0";

struct CommandResult {
    int exit_code{0};     // 0 pass, 1 tolerance failure
    std::string payload;  // rendered CSV or JSON, ready to write
};

struct RunOptions {
    int jobs{1};      // worker threads for sweep; others ignore it
    bool meta{false}; // prepend meta_tool/meta_version/meta_command keys
};

CommandResult cmd_evolve(const RunConfig& cfg, const RunOptions& opt);
CommandResult cmd_phases(const RunConfig& cfg, const RunOptions& opt);
CommandResult cmd_gauge_check(const RunConfig& cfg, const RunOptions& opt);
CommandResult cmd_entropy(const RunConfig& cfg, const RunOptions& opt);
CommandResult cmd_sweep(const RunConfig& cfg, const RunOptions& opt);

// Dispatch by subcommand name ("gauge-check" with the hyphen).
CommandResult run_command(const std::string& name, const RunConfig& cfg,
                          const RunOptions& opt);

}  // namespace qugauge::cli
