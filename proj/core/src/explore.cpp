#include "pmcp/explore.hpp"

#include <map>
#include <set>

#include "pmcp/automata.hpp"
#include "pmcp/errors.hpp"
#include "pmcp/measure.hpp"

namespace pmcp {

Strategy strategy_from_string(const std::string& name) {
  if (name == "bfs") return Strategy::Bfs;
  if (name == "dfs") return Strategy::Dfs;
  if (name == "greedy") return Strategy::Greedy;
  throw Error("unknown strategy \"" + name + "\" (expected bfs, dfs or greedy)");
}

std::string strategy_to_string(Strategy s) {
  switch (s) {
    case Strategy::Bfs: return "bfs";
    case Strategy::Dfs: return "dfs";
    case Strategy::Greedy: return "greedy";
  }
  return "?";
}

Search explore(const Pts& model, Strategy strategy, std::size_t budget) {
  // Outgoing transition ids per state, in id order.
  std::map<std::string, std::vector<std::string>> outgoing;
  for (const auto& [id, t] : model.transitions) outgoing[t.source].push_back(id);

  Search explored;
  std::set<std::string> reached;
  std::vector<std::string> discovery;           // bfs/dfs working order
  std::set<std::string> discovered;
  using GreedyKey = std::pair<Rat, std::string>;  // max prob, then min id
  auto greedy_less = [](const GreedyKey& a, const GreedyKey& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };
  std::set<GreedyKey, decltype(greedy_less)> greedy_frontier(greedy_less);

  auto reach = [&](const std::string& state) {
    if (!reached.insert(state).second) return;
    auto it = outgoing.find(state);
    if (it == outgoing.end()) return;
    for (const auto& id : it->second)
      if (discovered.insert(id).second) {
        discovery.push_back(id);
        greedy_frontier.insert({model.transitions.at(id).prob, id});
      }
  };

  reach(model.initial);
  std::size_t bfs_head = 0;
  while (explored.size() < budget) {
    std::string pick;
    if (strategy == Strategy::Greedy) {
      if (greedy_frontier.empty()) break;
      pick = greedy_frontier.begin()->second;
      greedy_frontier.erase(greedy_frontier.begin());
    } else if (strategy == Strategy::Bfs) {
      if (bfs_head == discovery.size()) break;
      pick = discovery[bfs_head++];
    } else {
      if (discovery.empty()) break;
      pick = discovery.back();
      discovery.pop_back();
    }
    explored.insert(pick);
    reach(model.transitions.at(pick).target);
  }
  return explored;
}

std::vector<CurveRow> progress_curve(const Pts& model, const FormulaPtr& f, Strategy strategy,
                                     const std::vector<std::size_t>& budgets) {
  if (!is_positive(f)) throw Error("progress_curve: formula must be negation-free");
  for (std::size_t i = 1; i < budgets.size(); ++i)
    if (budgets[i] < budgets[i - 1]) throw Error("progress_curve: budgets must be ascending");

  std::vector<CurveRow> rows;
  rows.reserve(budgets.size());
  for (std::size_t budget : budgets) {
    Search search = explore(model, strategy, budget);
    CurveRow row;
    row.budget = budget;
    row.search_size = search.size();
    row.lower_bound = prog_lower_bound(model, search);
    if (!has_found_violation(model, search, f)) row.exact = prog_exact_unchecked(model, search, f);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string curve_to_csv(const std::vector<CurveRow>& rows) {
  std::string csv = "budget,search_size,lower_bound,exact\n";
  for (const auto& row : rows) {
    csv += std::to_string(row.budget) + "," + std::to_string(row.search_size) + "," +
           rat_to_string(row.lower_bound) + "," +
           (row.exact ? rat_to_string(*row.exact) : std::string("VIOLATION")) + "\n";
  }
  return csv;
}

}  // namespace pmcp
