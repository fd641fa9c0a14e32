#pragma once

#include <cstdint>
#include <string>

#include "pmcp/chain.hpp"
#include "pmcp/formula.hpp"

namespace pmcp {

/// Guaranteed-interval Monte Carlo estimate of an LTL measure. Each sampled
/// prefix is classified by bracketing its unknown future: definitely-sat if
/// the empty-labels continuation already satisfies the formula (so every
/// continuation does), definitely-unsat if even the all-AP continuation
/// fails (so every continuation does); anything else counts as unknown.
struct IntervalEstimate {
  std::uint64_t n_samples = 0;
  std::uint64_t n_definitely_sat = 0;
  std::uint64_t n_definitely_unsat = 0;
  std::uint64_t n_unknown = 0;
  Rat lo;  // sat rate minus Hoeffding slack, clamped to [0,1]
  Rat hi;  // 1 - unsat rate plus slack, clamped
  Rat confidence_delta;
  std::uint64_t seed = 0;
  std::string rng_name;  // echoed for reproducibility
};

/// Samples n label-sequence prefixes of length `horizon` from the chain
/// (std::mt19937_64 seeded as given; one 64-bit draw per step, compared
/// exactly against cumulative rational weights). The true measure lies in
/// [lo, hi] with probability at least 1 - delta per side; the slack
/// sqrt(ln(2/delta) / 2n) is rounded outward to a rational. Bit-for-bit
/// reproducible for identical inputs.
IntervalEstimate interval_estimate(const Chain& chain, const FormulaPtr& f, std::uint64_t n,
                                   std::uint32_t horizon, std::uint64_t seed, const Rat& delta);

}  // namespace pmcp
