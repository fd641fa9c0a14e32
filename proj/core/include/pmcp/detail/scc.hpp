#pragma once

#include <cstdint>
#include <vector>

namespace pmcp::detail {

/// Iterative Tarjan. Returns the SCC id of every node; ids are assigned in
/// reverse topological order of the condensation.
struct SccResult {
  std::vector<std::uint32_t> component;
  std::uint32_t count = 0;
};

inline SccResult tarjan_scc(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  SccResult result;
  result.component.assign(n, UINT32_MAX);
  std::vector<std::uint32_t> index(n, UINT32_MAX), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::uint32_t next_index = 0;

  struct Frame {
    std::uint32_t node;
    std::size_t edge;
  };
  std::vector<Frame> frames;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != UINT32_MAX) continue;
    frames.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.node].size()) {
        std::uint32_t to = adj[f.node][f.edge++];
        if (index[to] == UINT32_MAX) {
          index[to] = lowlink[to] = next_index++;
          stack.push_back(to);
          on_stack[to] = true;
          frames.push_back({to, 0});
        } else if (on_stack[to] && index[to] < lowlink[f.node]) {
          lowlink[f.node] = index[to];
        }
      } else {
        std::uint32_t v = f.node;
        frames.pop_back();
        if (!frames.empty() && lowlink[v] < lowlink[frames.back().node])
          lowlink[frames.back().node] = lowlink[v];
        if (lowlink[v] == index[v]) {
          for (;;) {
            std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            result.component[w] = result.count;
            if (w == v) break;
          }
          ++result.count;
        }
      }
    }
  }
  return result;
}

}  // namespace pmcp::detail
