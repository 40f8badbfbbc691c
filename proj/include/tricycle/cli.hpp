// cli.hpp: subcommand dispatch for the tricycle tool

#pragma once

#include "tricycle/config.hpp"
#include "tricycle/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tricycle {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitSolver = 3 };

const std::vector<std::string>& subcommands();

// Computes the report of one subcommand. Throws ConfigError for bad input and
// ConvergenceError / PositivityError when the solver cannot produce the result.
Report build_report(const std::string& subcommand, const RunConfig& cfg);

// Runs a subcommand end to end: writes the report to cfg.output (or `out`
// when empty) and a diagnostics file next to it when grid points failed.
// Returns 0, 2 (configuration) or 3 (solver non-convergence).
int run(const std::string& subcommand, const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::string diagnostics_path(const std::string& subcommand, const RunConfig& cfg);

} // namespace tricycle
