#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pmcp/rational.hpp"

namespace pmcp {

/// Atomic propositions attached to a state. Names are nonempty words over
/// [a-zA-Z0-9_] and must be drawn from the model's declared universe.
using LabelSet = std::set<std::string>;

struct Transition {
  std::string source;
  std::string target;
  Rat prob;

  bool operator==(const Transition&) const = default;
};

/// Finite probabilistic transition system with explicit transition
/// identities. Every state's outgoing probability mass must be exactly 1;
/// see validate() for the full invariant list.
struct Pts {
  std::set<std::string> ap;
  std::map<std::string, LabelSet> states;
  std::string initial;
  std::map<std::string, Transition> transitions;

  bool operator==(const Pts&) const = default;
};

/// The transitions a model checker has explored so far.
using Search = std::set<std::string>;

/// A finite prefix of an execution path, as a chained transition sequence
/// starting at the initial state.
using ExecPrefix = std::vector<std::string>;

/// Generated identifiers in extensions. Inputs may not use the "__" prefix,
/// so these never collide with user ids.
inline constexpr const char* kSinkId = "__sink";
inline constexpr const char* kSinkLoopId = "__t_sink";
inline constexpr const char* kCompletionPrefix = "__t_";

/// Checks every Pts invariant. Returns an empty list iff the model is
/// well formed; each entry names the offending state or transition.
std::vector<std::string> validate(const Pts& model);

inline bool is_valid(const Pts& model) { return validate(model).empty(); }

/// Throws Error unless every id in the search names a transition of the model.
void require_valid_search(const Pts& model, const Search& search);

/// Throws Error unless the prefix starts at the initial state and chains;
/// the message names the first broken link.
void require_valid_prefix(const Pts& model, const ExecPrefix& prefix);

/// Label sequence of the states visited by a prefix (length |prefix| + 1).
/// An empty prefix yields just the initial state's labels.
std::vector<LabelSet> trace_prefix(const Pts& model, const ExecPrefix& prefix);

struct Extension {
  Pts pts;
  std::string sink;  // always kSinkId
};

/// The search plus a fresh unlabeled sink absorbing all unexplored mass:
/// endpoints of search transitions and the initial state are kept with
/// their labels, each kept state with outgoing mass < 1 gets a completion
/// transition to the sink, and the sink self-loops with probability 1.
Extension build_minimal_extension(const Pts& model, const Search& search);

/// Same construction with the sink labeled with every atomic proposition
/// (the best case for negation-free properties).
Extension build_top_extension(const Pts& model, const Search& search);

/// True iff candidate is a well-formed extension of the search: it contains
/// every search transition with identical endpoints, probability and
/// endpoint labels, shares the initial state id and its labels, and itself
/// passes validate().
bool check_extends(const Pts& base, const Search& search, const Pts& candidate);

}  // namespace pmcp
