#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pmcp/pts.hpp"

namespace pmcp {

enum class FKind { True, False, Atom, Not, And, Or, Next, Until, Release };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable syntax tree. F, G and W are parser sugar and never appear here;
/// Not is internal (positive surface formulas contain none).
struct Formula {
  FKind kind;
  std::string atom;  // FKind::Atom only
  FormulaPtr lhs;    // unary child or left operand
  FormulaPtr rhs;    // right operand
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(std::string name);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_next(FormulaPtr f);
FormulaPtr f_until(FormulaPtr a, FormulaPtr b);
FormulaPtr f_release(FormulaPtr a, FormulaPtr b);

/// Concrete grammar: atoms are words over [a-zA-Z0-9_]; literals true/false;
/// unary X F G ! bind tightest; binary U R W are right-associative; then &,
/// then | loosest. F/G/W expand at parse time:
///   F p -> true U p,  G p -> false R p,  p W q -> (p U q) | (false R p).
FormulaPtr parse_formula(std::string_view text);

/// Same grammar with minimal parentheses; parse(print(f)) == f.
std::string print_formula(const FormulaPtr& f);

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

/// True iff the tree contains no Not node (the negation-free fragment).
bool is_positive(const FormulaPtr& f);

/// True iff Not occurs only directly above atoms.
bool is_pnf(const FormulaPtr& f);

/// True iff the tree contains no temporal operator (Next/Until/Release).
bool is_propositional(const FormulaPtr& f);

/// Pushes every negation down to the atoms (double negations vanish).
FormulaPtr to_pnf(const FormulaPtr& f);

/// Positive-normal-form negation: semantically equivalent to !f.
FormulaPtr negate_to_pnf(const FormulaPtr& f);

/// Atom names occurring in the tree.
std::set<std::string> atoms_of(const FormulaPtr& f);

/// Distinct subformulas in postorder (children before parents, duplicates
/// merged structurally); the root is last.
std::vector<FormulaPtr> subformulas_postorder(const FormulaPtr& f);

/// Replaces every subtree structurally equal to `what` by `with`.
FormulaPtr substitute(const FormulaPtr& f, const FormulaPtr& what, const FormulaPtr& with);

/// Evaluates a propositional formula on one label set. Atoms absent from
/// the labels are false; Not is permitted anywhere.
bool eval_on_labels(const FormulaPtr& propositional, const LabelSet& labels);

/// Ultimately periodic word u v^omega; the loop must be nonempty.
struct UpWord {
  std::vector<LabelSet> prefix;
  std::vector<LabelSet> loop;
};

/// Per-position satisfaction of every subformula of `f` on the word's
/// |prefix| + |loop| folded positions. nodes[i] lists the subformulas in
/// postorder; sat[i][p] is the truth of nodes[i] at position p. The root is
/// nodes.back(). Until is a least and Release a greatest fixpoint over the
/// loop positions.
struct EvalTable {
  std::vector<FormulaPtr> nodes;
  std::vector<std::vector<bool>> sat;
};
EvalTable eval_up_word_table(const UpWord& word, const FormulaPtr& f);

/// Standard LTL satisfaction of u v^omega |= f.
bool eval_up_word(const UpWord& word, const FormulaPtr& f);

/// True iff both words have the same shape and w1's labels are pointwise
/// subsets of w2's. Throws Error on shape mismatch.
bool dominates(const UpWord& w1, const UpWord& w2);

}  // namespace pmcp
