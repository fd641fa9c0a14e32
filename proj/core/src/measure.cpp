#include "pmcp/measure.hpp"

#include <algorithm>

#include "pmcp/automata.hpp"
#include "pmcp/errors.hpp"

namespace pmcp {

namespace {

void require_fresh(const Chain& chain, const std::string& atom) {
  for (const auto& labels : chain.labels)
    if (labels.count(atom))
      throw Error("fresh atom \"" + atom + "\" already occurs in a label");
}

std::vector<std::string> ap_with(const Chain& chain, const std::string& atom) {
  std::vector<std::string> ap = chain.ap;
  if (std::find(ap.begin(), ap.end(), atom) == ap.end()) ap.push_back(atom);
  return ap;
}

enum class Now { True, False, Defer };

// Shared bit-refinement for Until and Release: q is the per-state
// probability of the eliminated subformula, classify decides whether it is
// already decided at a state or deferred to the successor.
Chain bit_refine(const Chain& chain, const std::vector<Rat>& q,
                 const std::vector<Now>& classify, const std::string& fresh_atom) {
  const std::size_t n = chain.size();
  Chain out;
  out.ap = ap_with(chain, fresh_atom);

  // State (s, bit): bit-true copies exist iff q > 0, bit-false iff q < 1.
  std::vector<std::int64_t> pos_of(n, -1), neg_of(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (q[s] > 0) {
      pos_of[s] = static_cast<std::int64_t>(out.names.size());
      out.names.push_back(chain.names[s] + "+");
      LabelSet labels = chain.labels[s];
      labels.insert(fresh_atom);
      out.labels.push_back(std::move(labels));
      out.init.push_back(chain.init[s] * q[s]);
    }
    if (q[s] < 1) {
      neg_of[s] = static_cast<std::int64_t>(out.names.size());
      out.names.push_back(chain.names[s] + "-");
      out.labels.push_back(chain.labels[s]);
      out.init.push_back(chain.init[s] * (1 - q[s]));
    }
  }

  out.rows.resize(out.names.size());
  for (std::size_t s = 0; s < n; ++s) {
    if (classify[s] == Now::Defer) {
      // The bit records the eliminated subformula's truth here, which on a
      // deferring state equals its truth at the successor: condition on it.
      if (pos_of[s] >= 0) {
        auto& row = out.rows[pos_of[s]];
        for (const auto& [t, p] : chain.rows[s])
          if (q[t] > 0) row.emplace_back(static_cast<std::uint32_t>(pos_of[t]), p * q[t] / q[s]);
      }
      if (neg_of[s] >= 0) {
        auto& row = out.rows[neg_of[s]];
        for (const auto& [t, p] : chain.rows[s])
          if (q[t] < 1)
            row.emplace_back(static_cast<std::uint32_t>(neg_of[t]), p * (1 - q[t]) / (1 - q[s]));
      }
    } else {
      // Decided now: the successor starts a fresh evaluation.
      for (std::int64_t from : {pos_of[s], neg_of[s]}) {
        if (from < 0) continue;
        auto& row = out.rows[from];
        for (const auto& [t, p] : chain.rows[s]) {
          if (q[t] > 0) row.emplace_back(static_cast<std::uint32_t>(pos_of[t]), p * q[t]);
          if (q[t] < 1) row.emplace_back(static_cast<std::uint32_t>(neg_of[t]), p * (1 - q[t]));
        }
      }
    }
  }

  verify_chain(out);
  return out;
}

// Leftmost-innermost temporal subformula whose operands are propositional.
FormulaPtr find_eliminable(const FormulaPtr& f) {
  if (f->lhs)
    if (FormulaPtr hit = find_eliminable(f->lhs)) return hit;
  if (f->rhs)
    if (FormulaPtr hit = find_eliminable(f->rhs)) return hit;
  switch (f->kind) {
    case FKind::Next:
      if (is_propositional(f->lhs)) return f;
      break;
    case FKind::Until:
    case FKind::Release:
      if (is_propositional(f->lhs) && is_propositional(f->rhs)) return f;
      break;
    default:
      break;
  }
  return nullptr;
}

std::string next_fresh_atom(const Chain& chain, unsigned& counter) {
  for (;; ++counter) {
    std::string name = "__p" + std::to_string(counter);
    bool taken = false;
    for (const auto& labels : chain.labels)
      if (labels.count(name)) {
        taken = true;
        break;
      }
    if (!taken) return name;
  }
}

}  // namespace

Chain eliminate_next(const Chain& chain, const FormulaPtr& xi, const std::string& fresh_atom) {
  require_fresh(chain, fresh_atom);
  const std::size_t n = chain.size();

  Chain out;
  out.ap = ap_with(chain, fresh_atom);
  std::vector<std::vector<std::int64_t>> edge_of(n);  // edge_of[s][k]: index of k-th edge of s
  for (std::size_t s = 0; s < n; ++s) {
    edge_of[s].resize(chain.rows[s].size());
    for (std::size_t k = 0; k < chain.rows[s].size(); ++k) {
      const auto& [t, p] = chain.rows[s][k];
      edge_of[s][k] = static_cast<std::int64_t>(out.names.size());
      out.names.push_back("(" + chain.names[s] + "," + chain.names[t] + ")");
      LabelSet labels = chain.labels[s];
      if (eval_on_labels(xi, chain.labels[t])) labels.insert(fresh_atom);
      out.labels.push_back(std::move(labels));
      out.init.push_back(chain.init[s] * p);
    }
  }
  out.rows.resize(out.names.size());
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < chain.rows[s].size(); ++k) {
      std::uint32_t t = chain.rows[s][k].first;
      auto& row = out.rows[edge_of[s][k]];
      for (std::size_t k2 = 0; k2 < chain.rows[t].size(); ++k2)
        row.emplace_back(static_cast<std::uint32_t>(edge_of[t][k2]), chain.rows[t][k2].second);
    }
  }
  verify_chain(out);
  return out;
}

Chain eliminate_until(const Chain& chain, const FormulaPtr& xi1, const FormulaPtr& xi2,
                      const std::string& fresh_atom) {
  require_fresh(chain, fresh_atom);
  std::vector<Rat> q = until_prob(chain, xi1, xi2);
  std::vector<Now> classify(chain.size());
  for (std::size_t s = 0; s < chain.size(); ++s) {
    bool a = eval_on_labels(xi1, chain.labels[s]);
    bool b = eval_on_labels(xi2, chain.labels[s]);
    classify[s] = b ? Now::True : a ? Now::Defer : Now::False;
  }
  return bit_refine(chain, q, classify, fresh_atom);
}

Chain eliminate_release(const Chain& chain, const FormulaPtr& xi1, const FormulaPtr& xi2,
                        const std::string& fresh_atom) {
  require_fresh(chain, fresh_atom);
  // xi1 R xi2 is the dual of !xi1 U !xi2.
  std::vector<Rat> not_q = until_prob(chain, negate_to_pnf(xi1), negate_to_pnf(xi2));
  std::vector<Rat> q(chain.size());
  for (std::size_t s = 0; s < chain.size(); ++s) q[s] = 1 - not_q[s];
  std::vector<Now> classify(chain.size());
  for (std::size_t s = 0; s < chain.size(); ++s) {
    bool a = eval_on_labels(xi1, chain.labels[s]);
    bool b = eval_on_labels(xi2, chain.labels[s]);
    classify[s] = !b ? Now::False : a ? Now::True : Now::Defer;
  }
  return bit_refine(chain, q, classify, fresh_atom);
}

Rat ltl_measure(Chain chain, FormulaPtr f) {
  if (!is_pnf(f)) throw Error("ltl_measure: formula must be in positive normal form");
  unsigned fresh_counter = 0;
  while (FormulaPtr target = find_eliminable(f)) {
    std::string atom = next_fresh_atom(chain, fresh_counter);
    switch (target->kind) {
      case FKind::Next:
        chain = eliminate_next(chain, target->lhs, atom);
        break;
      case FKind::Until:
        chain = eliminate_until(chain, target->lhs, target->rhs, atom);
        break;
      case FKind::Release:
        chain = eliminate_release(chain, target->lhs, target->rhs, atom);
        break;
      default:
        throw Error("unreachable");
    }
    f = substitute(f, target, f_atom(atom));
  }
  Rat measure = 0;
  for (std::size_t s = 0; s < chain.size(); ++s)
    if (chain.init[s] != 0 && eval_on_labels(f, chain.labels[s])) measure += chain.init[s];
  return measure;
}

Rat prog_exact(const Pts& model, const Search& search, const FormulaPtr& f) {
  if (!is_positive(f)) throw Error("prog_exact: formula must be negation-free");
  if (has_found_violation(model, search, f))
    throw ViolationFound("the search has found a violation of " + print_formula(f));
  return prog_exact_unchecked(model, search, f);
}

Rat prog_exact_unchecked(const Pts& model, const Search& search, const FormulaPtr& f) {
  if (!is_positive(f)) throw Error("prog_exact: formula must be negation-free");
  return ltl_measure(chain_of(build_minimal_extension(model, search).pts), f);
}

Rat prog_lower_bound(const Pts& model, const Search& search) {
  Extension ext = build_minimal_extension(model, search);
  Chain chain = chain_of(ext.pts);
  std::vector<char> in_a(chain.size(), 1), in_b(chain.size(), 0);
  in_b[state_index(chain, ext.sink)] = 1;
  std::vector<Rat> q = reach_prob(chain, in_a, in_b);
  Rat reach = 0;
  for (std::size_t s = 0; s < chain.size(); ++s) reach += chain.init[s] * q[s];
  return 1 - reach;
}

}  // namespace pmcp
