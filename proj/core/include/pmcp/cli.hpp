#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmcp::cli {

/// Runs one CLI command (args exclude the program name) and writes the
/// report to `out` and diagnostics to `err`.
///
/// Subcommands:
///   validate <model.json> [--complete-final-states]
///   progress <model.json> <search.json> --formula "<f>" [--method exact|bound|both]
///   violation <model.json> <search.json> --formula "<f>"
///   explore <model.json> --formula "<f>" --strategy bfs|dfs|greedy
///           --budgets 0,1,2,4 [--csv <path>]
///   estimate <model.json> <search.json> --formula "<f>" --samples N
///            --horizon H --seed S [--delta num/den]
/// Common flags: --json (machine-readable report), --timing.
///
/// Exit codes: 0 success; 1 violation found (progress/violation);
/// 2 input or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmcp::cli
