#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmcp/formula.hpp"
#include "pmcp/pts.hpp"

namespace pmcp {

/// Letters are bitmasks over the automaton's AP order.
using Letter = std::uint32_t;

Letter letter_of(const LabelSet& labels, const std::vector<std::string>& ap);

/// Generalized Buechi automaton from the closure tableau of a PNF formula.
/// A state is a locally consistent truth assignment to the closure, encoded
/// as a bitmask; transitions are implicit: from state M reading a letter
/// compatible with M's literals, the successors are the consistent sets
/// matching M's forced next-step bits. One acceptance set per Until.
struct Gnba {
  std::vector<std::string> ap;
  std::vector<FormulaPtr> closure;          // bit i of a state mask <-> closure[i]
  std::vector<std::uint64_t> states;        // consistent masks
  std::vector<std::uint32_t> initial;       // indices into states
  std::vector<Letter> required_atoms;       // per state, over ap bits
  std::vector<Letter> forbidden_atoms;
  std::vector<std::uint64_t> forced_true;   // per state, over closure bits
  std::vector<std::uint64_t> forced_false;
  std::vector<std::vector<bool>> acceptance;  // [until][state]

  /// Successor state indices of `state` when reading `letter`.
  std::vector<std::uint32_t> successors(std::uint32_t state, Letter letter) const;
  bool letter_compatible(std::uint32_t state, Letter letter) const;
};

/// Tableau construction; throws unless f is in PNF. For every ultimately
/// periodic word within test bounds, membership equals eval_up_word.
Gnba gnba_of(const FormulaPtr& f, const std::vector<std::string>& ap);

/// Buechi automaton with a single acceptance set (counter
/// degeneralization); language equals the source Gnba's.
struct Nba {
  std::vector<std::string> ap;
  std::uint32_t gnba_states = 0;
  std::uint32_t counters = 1;  // 1 when the Gnba has no acceptance sets
  std::vector<std::uint32_t> initial;    // packed state = gnba_index * counters + counter
  std::vector<bool> accepting;           // per packed state
  const Gnba* source = nullptr;

  std::uint32_t size() const { return gnba_states * counters; }
  std::vector<std::uint32_t> successors(std::uint32_t packed, Letter letter) const;
};

/// The degeneralized automaton borrows the Gnba, which must outlive it.
Nba degeneralize(const Gnba& gnba);

/// Word membership decided by an accepting-lasso search on the product with
/// the word's single-path graph.
bool nba_accepts_up_word(const Nba& nba, const UpWord& word);
bool gnba_accepts_up_word(const Gnba& gnba, const UpWord& word);

/// A model-level lasso: stem then cycle, as state ids.
struct LassoWitness {
  std::vector<std::string> stem;
  std::vector<std::string> cycle;
};

/// True iff every execution path of the model satisfies f. Probabilities
/// are ignored: the check runs on the support graph, intersected with the
/// automaton of the negation; emptiness by accepting-lasso search over
/// SCCs. On failure an offending lasso is reported through `witness`.
bool universal_sat(const Pts& model, const FormulaPtr& f, LassoWitness* witness = nullptr);

/// True iff no extension of the search satisfies f on all paths. Decided on
/// the top extension, which is the best case for negation-free formulas;
/// requires a positive formula.
bool has_found_violation(const Pts& model, const Search& search, const FormulaPtr& f,
                         LassoWitness* witness = nullptr);

}  // namespace pmcp
