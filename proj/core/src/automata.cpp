#include "pmcp/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "pmcp/detail/scc.hpp"
#include "pmcp/errors.hpp"

namespace pmcp {

namespace {

constexpr std::size_t kMaxClosure = 22;  // enumeration is 2^|closure|

std::int64_t ap_index(const std::vector<std::string>& ap, const std::string& name) {
  auto it = std::find(ap.begin(), ap.end(), name);
  return it == ap.end() ? -1 : it - ap.begin();
}

}  // namespace

Letter letter_of(const LabelSet& labels, const std::vector<std::string>& ap) {
  Letter letter = 0;
  for (std::size_t i = 0; i < ap.size(); ++i)
    if (labels.count(ap[i])) letter |= Letter(1) << i;
  return letter;
}

bool Gnba::letter_compatible(std::uint32_t state, Letter letter) const {
  return (letter & required_atoms[state]) == required_atoms[state] &&
         (letter & forbidden_atoms[state]) == 0;
}

std::vector<std::uint32_t> Gnba::successors(std::uint32_t state, Letter letter) const {
  std::vector<std::uint32_t> out;
  if (!letter_compatible(state, letter)) return out;
  const std::uint64_t need = forced_true[state];
  const std::uint64_t avoid = forced_false[state];
  for (std::uint32_t j = 0; j < states.size(); ++j)
    if ((states[j] & need) == need && (states[j] & avoid) == 0) out.push_back(j);
  return out;
}

Gnba gnba_of(const FormulaPtr& f, const std::vector<std::string>& ap) {
  if (!is_pnf(f)) throw Error("gnba_of: formula must be in positive normal form");
  if (ap.size() > 32) throw Error("gnba_of: at most 32 atomic propositions supported");

  Gnba a;
  a.ap = ap;
  a.closure = subformulas_postorder(f);
  const std::size_t n = a.closure.size();
  if (n > kMaxClosure) throw Error("gnba_of: formula too large (closure of " + std::to_string(n) + ")");

  // Closure indices of children, atoms, and the root.
  std::vector<std::int64_t> lhs_of(n, -1), rhs_of(n, -1), atom_ap(n, -1);
  auto closure_index = [&](const FormulaPtr& g) -> std::size_t {
    for (std::size_t i = 0; i < n; ++i)
      if (structurally_equal(a.closure[i], g)) return i;
    throw Error("unreachable: closure miss");
  };
  for (std::size_t i = 0; i < n; ++i) {
    const FormulaPtr& node = a.closure[i];
    if (node->lhs) lhs_of[i] = static_cast<std::int64_t>(closure_index(node->lhs));
    if (node->rhs) rhs_of[i] = static_cast<std::int64_t>(closure_index(node->rhs));
    if (node->kind == FKind::Atom) atom_ap[i] = ap_index(ap, node->atom);
  }
  const std::size_t root = closure_index(f);

  std::vector<std::uint32_t> untils;
  for (std::size_t i = 0; i < n; ++i)
    if (a.closure[i]->kind == FKind::Until) untils.push_back(static_cast<std::uint32_t>(i));

  // Enumerate locally consistent truth assignments.
  for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m) {
    auto bit = [&](std::int64_t i) { return (m >> i) & 1; };
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const FormulaPtr& node = a.closure[i];
      switch (node->kind) {
        case FKind::True: ok = bit(i); break;
        case FKind::False: ok = !bit(i); break;
        case FKind::Atom:
          if (atom_ap[i] < 0) ok = !bit(i);  // unknown atoms are false everywhere
          break;
        case FKind::Not: ok = bit(i) != bit(lhs_of[i]); break;
        case FKind::And: ok = bit(i) == (bit(lhs_of[i]) && bit(rhs_of[i])); break;
        case FKind::Or: ok = bit(i) == (bit(lhs_of[i]) || bit(rhs_of[i])); break;
        case FKind::Next: break;
        case FKind::Until:
          if (bit(rhs_of[i]) && !bit(i)) ok = false;
          if (bit(i) && !bit(rhs_of[i]) && !bit(lhs_of[i])) ok = false;
          break;
        case FKind::Release:
          if (bit(i) && !bit(rhs_of[i])) ok = false;
          if (bit(lhs_of[i]) && bit(rhs_of[i]) && !bit(i)) ok = false;
          break;
      }
    }
    if (!ok) continue;

    Letter required = 0, forbidden = 0;
    std::uint64_t forced_true = 0, forced_false = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const FormulaPtr& node = a.closure[i];
      switch (node->kind) {
        case FKind::Atom:
          if (atom_ap[i] >= 0) {
            if (bit(i)) required |= Letter(1) << atom_ap[i];
            else forbidden |= Letter(1) << atom_ap[i];
          }
          break;
        case FKind::Next:
          if (bit(i)) forced_true |= std::uint64_t(1) << lhs_of[i];
          else forced_false |= std::uint64_t(1) << lhs_of[i];
          break;
        case FKind::Until:
          // U = rhs | (lhs & X U): undecided iff the obligation defers.
          if (bit(i) && !bit(rhs_of[i])) forced_true |= std::uint64_t(1) << i;
          if (!bit(i) && bit(lhs_of[i])) forced_false |= std::uint64_t(1) << i;
          break;
        case FKind::Release:
          // R = rhs & (lhs | X R).
          if (bit(i) && !bit(lhs_of[i])) forced_true |= std::uint64_t(1) << i;
          if (!bit(i) && bit(rhs_of[i])) forced_false |= std::uint64_t(1) << i;
          break;
        default:
          break;
      }
    }

    std::uint32_t idx = static_cast<std::uint32_t>(a.states.size());
    a.states.push_back(m);
    a.required_atoms.push_back(required);
    a.forbidden_atoms.push_back(forbidden);
    a.forced_true.push_back(forced_true);
    a.forced_false.push_back(forced_false);
    if ((m >> root) & 1) a.initial.push_back(idx);
  }

  a.acceptance.assign(untils.size(), std::vector<bool>(a.states.size(), false));
  for (std::size_t u = 0; u < untils.size(); ++u) {
    std::uint32_t i = untils[u];
    for (std::uint32_t s = 0; s < a.states.size(); ++s) {
      std::uint64_t m = a.states[s];
      bool holds = (m >> i) & 1;
      bool discharged = (m >> rhs_of[i]) & 1;
      a.acceptance[u][s] = !holds || discharged;
    }
  }
  return a;
}

Nba degeneralize(const Gnba& gnba) {
  Nba nba;
  nba.ap = gnba.ap;
  nba.source = &gnba;
  nba.gnba_states = static_cast<std::uint32_t>(gnba.states.size());
  nba.counters = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(gnba.acceptance.size()));
  nba.accepting.assign(nba.size(), false);
  const bool trivial = gnba.acceptance.empty();
  for (std::uint32_t q = 0; q < nba.gnba_states; ++q)
    if (trivial || gnba.acceptance[0][q])
      nba.accepting[q * nba.counters] = true;  // counter 0 with the first set hit
  for (std::uint32_t q : gnba.initial) nba.initial.push_back(q * nba.counters);
  return nba;
}

std::vector<std::uint32_t> Nba::successors(std::uint32_t packed, Letter letter) const {
  const std::uint32_t q = packed / counters;
  const std::uint32_t c = packed % counters;
  std::uint32_t next_c = c;
  if (!source->acceptance.empty() && source->acceptance[c][q]) next_c = (c + 1) % counters;
  std::vector<std::uint32_t> out;
  for (std::uint32_t q2 : source->successors(q, letter)) out.push_back(q2 * counters + next_c);
  return out;
}

namespace {

// Product of an automaton with the single-path graph of an ultimately
// periodic word; nodes are (automaton state, word position).
struct WordProduct {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> nodes;  // (state, pos)
  std::vector<std::vector<std::uint32_t>> adj;
};

template <typename SuccFn>
WordProduct word_product(const std::vector<std::uint32_t>& initial, SuccFn&& successors,
                         const UpWord& word, const std::vector<std::string>& ap) {
  const std::size_t u = word.prefix.size();
  const std::size_t n = u + word.loop.size();
  std::vector<Letter> letters(n);
  for (std::size_t p = 0; p < n; ++p)
    letters[p] = letter_of(p < u ? word.prefix[p] : word.loop[p - u], ap);
  auto succ_pos = [&](std::size_t p) { return p + 1 < n ? p + 1 : u; };

  WordProduct product;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> seen;
  std::deque<std::uint32_t> work;
  auto intern = [&](std::uint32_t state, std::uint32_t pos) {
    auto [it, fresh] = seen.try_emplace({state, pos}, static_cast<std::uint32_t>(product.nodes.size()));
    if (fresh) {
      product.nodes.emplace_back(state, pos);
      product.adj.emplace_back();
      work.push_back(it->second);
    }
    return it->second;
  };
  for (std::uint32_t q : initial) intern(q, 0);
  while (!work.empty()) {
    std::uint32_t id = work.front();
    work.pop_front();
    auto [state, pos] = product.nodes[id];
    std::uint32_t next = static_cast<std::uint32_t>(succ_pos(pos));
    for (std::uint32_t q2 : successors(state, letters[pos])) product.adj[id].push_back(intern(q2, next));
  }
  return product;
}

// An SCC admits a cycle iff it has more than one node or a self-loop.
std::vector<bool> cyclic_components(const WordProduct& p, const detail::SccResult& scc) {
  std::vector<std::uint32_t> size(scc.count, 0);
  std::vector<bool> cyclic(scc.count, false);
  for (std::uint32_t v = 0; v < p.nodes.size(); ++v) ++size[scc.component[v]];
  for (std::uint32_t v = 0; v < p.nodes.size(); ++v)
    for (std::uint32_t w : p.adj[v])
      if (v == w || (scc.component[v] == scc.component[w] && size[scc.component[v]] > 1))
        cyclic[scc.component[v]] = true;
  return cyclic;
}

}  // namespace

bool nba_accepts_up_word(const Nba& nba, const UpWord& word) {
  WordProduct product = word_product(
      nba.initial, [&](std::uint32_t q, Letter l) { return nba.successors(q, l); }, word, nba.ap);
  detail::SccResult scc = detail::tarjan_scc(product.adj);
  std::vector<bool> cyclic = cyclic_components(product, scc);
  for (std::uint32_t v = 0; v < product.nodes.size(); ++v)
    if (nba.accepting[product.nodes[v].first] && cyclic[scc.component[v]]) return true;
  return false;
}

bool gnba_accepts_up_word(const Gnba& gnba, const UpWord& word) {
  WordProduct product = word_product(
      gnba.initial, [&](std::uint32_t q, Letter l) { return gnba.successors(q, l); }, word, gnba.ap);
  detail::SccResult scc = detail::tarjan_scc(product.adj);
  std::vector<bool> cyclic = cyclic_components(product, scc);
  // Accept iff some cyclic reachable SCC intersects every acceptance set.
  const std::size_t k = gnba.acceptance.size();
  std::vector<std::vector<bool>> hits(scc.count, std::vector<bool>(k, false));
  for (std::uint32_t v = 0; v < product.nodes.size(); ++v)
    for (std::size_t a = 0; a < k; ++a)
      if (gnba.acceptance[a][product.nodes[v].first]) hits[scc.component[v]][a] = true;
  for (std::uint32_t c = 0; c < scc.count; ++c) {
    if (!cyclic[c]) continue;
    bool all = true;
    for (std::size_t a = 0; a < k; ++a) all = all && hits[c][a];
    if (all) return true;
  }
  return false;
}

bool universal_sat(const Pts& model, const FormulaPtr& f, LassoWitness* witness) {
  std::vector<std::string> ap(model.ap.begin(), model.ap.end());
  Gnba gnba = gnba_of(negate_to_pnf(f), ap);
  Nba nba = degeneralize(gnba);

  // Support graph: indices in sorted-id order, parallel edges collapsed.
  std::vector<std::string> names;
  std::map<std::string, std::uint32_t> index;
  std::vector<Letter> letters;
  for (const auto& [id, labels] : model.states) {
    index[id] = static_cast<std::uint32_t>(names.size());
    names.push_back(id);
    letters.push_back(letter_of(labels, ap));
  }
  std::vector<std::set<std::uint32_t>> adj(names.size());
  for (const auto& [id, t] : model.transitions) adj[index.at(t.source)].insert(index.at(t.target));

  // Product with the automaton of the negation.
  struct Node {
    std::uint32_t model_state;
    std::uint32_t nba_state;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<std::uint32_t>> product;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> seen;
  std::map<std::pair<std::uint32_t, Letter>, std::vector<std::uint32_t>> succ_cache;
  std::deque<std::uint32_t> work;
  auto intern = [&](std::uint32_t s, std::uint32_t q) {
    auto [it, fresh] = seen.try_emplace({s, q}, static_cast<std::uint32_t>(nodes.size()));
    if (fresh) {
      nodes.push_back({s, q});
      product.emplace_back();
      work.push_back(it->second);
    }
    return it->second;
  };
  const std::uint32_t init_state = index.at(model.initial);
  for (std::uint32_t q : nba.initial) intern(init_state, q);
  while (!work.empty()) {
    std::uint32_t id = work.front();
    work.pop_front();
    auto [s, q] = std::pair(nodes[id].model_state, nodes[id].nba_state);
    auto cache_it = succ_cache.find({q, letters[s]});
    if (cache_it == succ_cache.end())
      cache_it = succ_cache.emplace(std::pair(q, letters[s]), nba.successors(q, letters[s])).first;
    for (std::uint32_t t : adj[s])
      for (std::uint32_t q2 : cache_it->second) product[id].push_back(intern(t, q2));
  }

  detail::SccResult scc = detail::tarjan_scc(product);
  std::vector<std::uint32_t> scc_size(scc.count, 0);
  std::vector<bool> cyclic(scc.count, false);
  for (std::uint32_t v = 0; v < nodes.size(); ++v) ++scc_size[scc.component[v]];
  for (std::uint32_t v = 0; v < nodes.size(); ++v)
    for (std::uint32_t w : product[v])
      if (v == w || (scc.component[v] == scc.component[w] && scc_size[scc.component[v]] > 1))
        cyclic[scc.component[v]] = true;

  std::int64_t hit = -1;
  for (std::uint32_t v = 0; v < nodes.size() && hit < 0; ++v)
    if (nba.accepting[nodes[v].nba_state] && cyclic[scc.component[v]]) hit = v;
  if (hit < 0) return true;

  if (witness) {
    // Stem: BFS from the initial product nodes to the accepting node.
    std::vector<std::int64_t> parent(nodes.size(), -2);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t q : nba.initial) {
      std::uint32_t id = seen.at({init_state, q});
      parent[id] = -1;
      queue.push_back(id);
    }
    while (!queue.empty()) {
      std::uint32_t v = queue.front();
      queue.pop_front();
      for (std::uint32_t w : product[v])
        if (parent[w] == -2) {
          parent[w] = v;
          queue.push_back(w);
        }
    }
    witness->stem.clear();
    for (std::int64_t v = hit; v >= 0; v = parent[v]) witness->stem.push_back(names[nodes[v].model_state]);
    std::reverse(witness->stem.begin(), witness->stem.end());
    witness->stem.pop_back();  // the accepting node opens the cycle instead

    // Cycle: path from hit back to hit inside its SCC.
    std::uint32_t target = static_cast<std::uint32_t>(hit);
    std::vector<std::int64_t> cparent(nodes.size(), -2);
    std::deque<std::uint32_t> cqueue{target};
    cparent[target] = -1;
    std::int64_t closer = -1;
    while (!cqueue.empty() && closer < 0) {
      std::uint32_t v = cqueue.front();
      cqueue.pop_front();
      for (std::uint32_t w : product[v]) {
        if (w == target) {
          closer = v;
          break;
        }
        if (scc.component[w] == scc.component[target] && cparent[w] == -2) {
          cparent[w] = v;
          cqueue.push_back(w);
        }
      }
    }
    witness->cycle.clear();
    for (std::int64_t v = closer; v >= 0; v = cparent[v])
      witness->cycle.push_back(names[nodes[v].model_state]);
    std::reverse(witness->cycle.begin(), witness->cycle.end());
  }
  return false;
}

bool has_found_violation(const Pts& model, const Search& search, const FormulaPtr& f,
                         LassoWitness* witness) {
  if (!is_positive(f))
    throw Error("has_found_violation: formula must be negation-free (the top-extension reduction is unsound otherwise)");
  Extension top = build_top_extension(model, search);
  return !universal_sat(top.pts, f, witness);
}

}  // namespace pmcp
