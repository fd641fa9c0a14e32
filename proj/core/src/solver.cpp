#include "pmcp/solver.hpp"

#include <algorithm>
#include <deque>

#include "pmcp/errors.hpp"

namespace pmcp {

namespace {

// Sorted sparse row: column -> coefficient.
using SparseRow = std::vector<std::pair<std::uint32_t, Rat>>;

const Rat* find_col(const SparseRow& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

// row -= factor * pivot, dropping exact zeros.
void axpy(SparseRow& row, const Rat& factor, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(std::move(row[i++]));
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -factor * pivot[j].second);
      ++j;
    } else {
      Rat v = row[i].second - factor * pivot[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  row = std::move(out);
}

}  // namespace

std::vector<Rat> reach_prob(const Chain& chain, const std::vector<char>& in_a,
                            const std::vector<char>& in_b) {
  const std::size_t n = chain.size();
  if (in_a.size() != n || in_b.size() != n) throw Error("reach_prob: predicate size mismatch");

  // Backward reachability: which A-and-not-B states can reach B at all.
  std::vector<std::vector<std::uint32_t>> preds(n);
  for (std::uint32_t s = 0; s < n; ++s)
    for (const auto& [t, p] : chain.rows[s]) preds[t].push_back(s);

  std::vector<char> can_reach(n, 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s = 0; s < n; ++s)
    if (in_b[s]) {
      can_reach[s] = 1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    std::uint32_t t = queue.front();
    queue.pop_front();
    for (std::uint32_t s : preds[t])
      if (!can_reach[s] && in_a[s] && !in_b[s]) {
        can_reach[s] = 1;
        queue.push_back(s);
      }
  }

  std::vector<Rat> q(n, Rat(0));
  for (std::uint32_t s = 0; s < n; ++s)
    if (in_b[s]) q[s] = 1;

  // Unknowns: A-and-not-B states that can reach B.
  std::vector<std::uint32_t> unknowns;
  std::vector<std::int64_t> var_of(n, -1);
  for (std::uint32_t s = 0; s < n; ++s)
    if (!in_b[s] && in_a[s] && can_reach[s]) {
      var_of[s] = static_cast<std::int64_t>(unknowns.size());
      unknowns.push_back(s);
    }
  const std::size_t m = unknowns.size();
  if (m == 0) return q;

  // (I - P_XX) x = b with b_s the one-step mass into q=1 states.
  std::vector<SparseRow> rows(m);
  std::vector<Rat> rhs(m, Rat(0));
  for (std::size_t v = 0; v < m; ++v) {
    std::uint32_t s = unknowns[v];
    SparseRow entries{{static_cast<std::uint32_t>(v), Rat(1)}};
    for (const auto& [t, p] : chain.rows[s]) {
      if (var_of[t] >= 0)
        entries.emplace_back(static_cast<std::uint32_t>(var_of[t]), -p);
      else if (q[t] == 1)
        rhs[v] += p;
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseRow row;
    for (auto& e : entries) {
      if (!row.empty() && row.back().first == e.first)
        row.back().second += e.second;
      else
        row.push_back(std::move(e));
    }
    std::erase_if(row, [](const auto& e) { return e.second == 0; });
    rows[v] = std::move(row);
  }

  // Forward elimination in index order.
  for (std::size_t i = 0; i < m; ++i) {
    const Rat* diag = find_col(rows[i], static_cast<std::uint32_t>(i));
    if (!diag || *diag == 0) throw Error("reach_prob: zero pivot (internal)");
    Rat d = *diag;
    if (d != 1) {
      for (auto& [c, v] : rows[i]) v /= d;
      rhs[i] /= d;
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      const Rat* coef = find_col(rows[j], static_cast<std::uint32_t>(i));
      if (!coef) continue;
      Rat f = *coef;
      axpy(rows[j], f, rows[i]);
      rhs[j] -= f * rhs[i];
    }
  }
  // Back substitution.
  std::vector<Rat> x(m, Rat(0));
  for (std::size_t i = m; i-- > 0;) {
    Rat v = rhs[i];
    for (const auto& [c, coef] : rows[i])
      if (c > i) v -= coef * x[c];
    x[i] = std::move(v);
  }
  for (std::size_t v = 0; v < m; ++v) q[unknowns[v]] = std::move(x[v]);
  return q;
}

std::vector<Rat> until_prob(const Chain& chain, const FormulaPtr& a, const FormulaPtr& b) {
  const std::size_t n = chain.size();
  std::vector<char> in_a(n), in_b(n);
  for (std::size_t s = 0; s < n; ++s) {
    in_a[s] = eval_on_labels(a, chain.labels[s]) ? 1 : 0;
    in_b[s] = eval_on_labels(b, chain.labels[s]) ? 1 : 0;
  }
  return reach_prob(chain, in_a, in_b);
}

}  // namespace pmcp
