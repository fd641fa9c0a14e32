#pragma once

#include <vector>

#include "pmcp/chain.hpp"
#include "pmcp/formula.hpp"

namespace pmcp {

/// Per-state probability of the paths satisfying "A until B" where A and B
/// are state sets: 1 on B; 0 where no B-state is reachable through A-and-
/// not-B states; the rest solve q_s = sum_t P(s,t) q_t exactly (sparse
/// Gaussian elimination over rationals, no pivoting needed: the restricted
/// system is an M-matrix).
std::vector<Rat> reach_prob(const Chain& chain, const std::vector<char>& in_a,
                            const std::vector<char>& in_b);

/// Predicate form: A and B read as propositional formulas on state labels.
std::vector<Rat> until_prob(const Chain& chain, const FormulaPtr& a, const FormulaPtr& b);

}  // namespace pmcp
