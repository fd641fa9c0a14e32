#include "pmcp/estimate.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "pmcp/errors.hpp"

namespace pmcp {

namespace {

// Upper bound on sqrt(ln(2/delta) / 2n) as an exact rational: double
// rounding is at most a few ulps, stepped outward well past that.
Rat hoeffding_slack(const Rat& delta, std::uint64_t n) {
  if (delta <= 0 || delta >= 1) throw Error("confidence delta must lie in (0,1)");
  double x = std::sqrt(std::log(2.0 / delta.get_d()) / (2.0 * static_cast<double>(n)));
  for (int i = 0; i < 8; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
  return rat_from_double_exact(x);
}

}  // namespace

IntervalEstimate interval_estimate(const Chain& chain, const FormulaPtr& f, std::uint64_t n,
                                   std::uint32_t horizon, std::uint64_t seed, const Rat& delta) {
  if (!is_positive(f)) throw Error("interval_estimate: formula must be negation-free");
  if (n < 1) throw Error("interval_estimate: need at least one sample");
  if (horizon < 1) throw Error("interval_estimate: horizon must be at least 1");

  IntervalEstimate est;
  est.n_samples = n;
  est.seed = seed;
  est.rng_name = "mt19937_64";
  est.confidence_delta = delta;

  LabelSet all_ap(chain.ap.begin(), chain.ap.end());
  const Rat two64 = Rat(mpz_class(1) << 64);

  std::mt19937_64 rng(seed);
  auto pick = [&](const auto& weighted) -> std::uint32_t {
    // weighted: range of (index, Rat) with total mass 1; exactly one draw.
    Rat r = Rat(mpz_class(rng())) / two64;
    Rat cum = 0;
    std::uint32_t last = 0;
    for (const auto& [idx, w] : weighted) {
      cum += w;
      last = idx;
      if (r < cum) return idx;
    }
    return last;  // r landed in the zero-width tail
  };

  std::vector<std::pair<std::uint32_t, Rat>> init_weights;
  for (std::uint32_t s = 0; s < chain.size(); ++s)
    if (chain.init[s] > 0) init_weights.emplace_back(s, chain.init[s]);

  UpWord word;
  for (std::uint64_t i = 0; i < n; ++i) {
    word.prefix.clear();
    std::uint32_t state = pick(init_weights);
    word.prefix.push_back(chain.labels[state]);
    for (std::uint32_t step = 1; step < horizon; ++step) {
      state = pick(chain.rows[state]);
      word.prefix.push_back(chain.labels[state]);
    }
    word.loop = {LabelSet{}};
    if (eval_up_word(word, f)) {
      ++est.n_definitely_sat;
      continue;
    }
    word.loop = {all_ap};
    if (!eval_up_word(word, f))
      ++est.n_definitely_unsat;
    else
      ++est.n_unknown;
  }

  Rat slack = hoeffding_slack(delta, n);
  Rat nn = Rat(mpz_class(n));
  est.lo = Rat(mpz_class(est.n_definitely_sat)) / nn - slack;
  if (est.lo < 0) est.lo = 0;
  est.hi = 1 - Rat(mpz_class(est.n_definitely_unsat)) / nn + slack;
  if (est.hi > 1) est.hi = 1;
  return est;
}

}  // namespace pmcp
