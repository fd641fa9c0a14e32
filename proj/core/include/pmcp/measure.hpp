#pragma once

#include "pmcp/chain.hpp"
#include "pmcp/formula.hpp"
#include "pmcp/solver.hpp"

namespace pmcp {

/// One refinement step eliminating an innermost "X xi": states become the
/// positive-probability edges of the chain; the fresh atom marks edges whose
/// target satisfies xi. Measures of events over the original labels are
/// preserved under projection.
Chain eliminate_next(const Chain& chain, const FormulaPtr& xi, const std::string& fresh_atom);

/// Bit-refinement eliminating "xi1 U xi2": each state splits into a bit-true
/// copy (carrying the fresh atom, created iff q > 0) and a bit-false copy
/// (iff q < 1), where q = until_prob(chain, xi1, xi2). From states whose
/// truth is decided now the next bit is drawn fresh; from deferring states
/// the bit propagates with Bayes conditioning.
Chain eliminate_until(const Chain& chain, const FormulaPtr& xi1, const FormulaPtr& xi2,
                      const std::string& fresh_atom);

/// Same scheme for "xi1 R xi2" with q = 1 - until_prob(chain, !xi1, !xi2).
Chain eliminate_release(const Chain& chain, const FormulaPtr& xi1, const FormulaPtr& xi2,
                        const std::string& fresh_atom);

/// Measure of the paths of the chain satisfying f. f must be in positive
/// normal form over {true, false, atoms, !atom, &, |, X, U, R}; temporal
/// subformulas are eliminated leftmost-innermost first with fresh "__p<k>"
/// atoms (never escaping this call), then the propositional remainder is
/// summed over the initial distribution. Exponential in the size of f,
/// polynomial in the chain.
Rat ltl_measure(Chain chain, FormulaPtr f);

/// Exact progress of the search toward verifying a negation-free formula:
/// the measure of the formula on the minimal extension. Requires a positive
/// formula and that the search has not found a violation; throws
/// ViolationFound otherwise.
Rat prog_exact(const Pts& model, const Search& search, const FormulaPtr& f);

/// Skips the violation check. When a violation exists the returned measure
/// is a diagnostic value only, not the progress measure.
Rat prog_exact_unchecked(const Pts& model, const Search& search, const FormulaPtr& f);

/// Formula-independent polynomial-time lower bound on progress: the mass of
/// the executions that never leave the explored transitions, i.e. one minus
/// the probability of reaching the sink of the minimal extension.
Rat prog_lower_bound(const Pts& model, const Search& search);

}  // namespace pmcp
