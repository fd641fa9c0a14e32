#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pmcp/formula.hpp"
#include "pmcp/pts.hpp"
#include "pmcp/rational.hpp"

namespace pmcp {

enum class Strategy { Bfs, Dfs, Greedy };

Strategy strategy_from_string(const std::string& name);
std::string strategy_to_string(Strategy s);

/// Deterministic frontier exploration producing at most `budget` transitions.
/// The frontier holds the unexplored transitions whose source is the initial
/// state or the target of an explored transition, discovered in transition-id
/// order; bfs pops oldest-discovered first, dfs newest first, greedy the
/// highest-probability one (ties broken by id). Searches are nested across
/// increasing budgets.
Search explore(const Pts& model, Strategy strategy, std::size_t budget);

struct CurveRow {
  std::size_t budget = 0;
  std::size_t search_size = 0;
  Rat lower_bound;
  std::optional<Rat> exact;  // empty iff the search found a violation
};

/// One row per budget (ascending); the exact column reports a violation
/// instead of a number once the search refutes the formula.
std::vector<CurveRow> progress_curve(const Pts& model, const FormulaPtr& f, Strategy strategy,
                                     const std::vector<std::size_t>& budgets);

/// CSV with header "budget,search_size,lower_bound,exact"; rationals as
/// "num/den", violations as "VIOLATION".
std::string curve_to_csv(const std::vector<CurveRow>& rows);

}  // namespace pmcp
