#pragma once

#include <random>
#include <string>
#include <vector>

#include "pmcp/chain.hpp"
#include "pmcp/pts.hpp"

namespace pmcp::testing {

/// Seeded random chain: up to max_states states, random labels over the
/// given atoms, 1-3 successors per state with small-integer weights
/// normalized exactly, point-mass init at state 0.
inline Chain random_chain(std::uint64_t seed, std::size_t max_states,
                          const std::vector<std::string>& atoms) {
  std::mt19937_64 rng(seed);
  const std::size_t n = 1 + rng() % max_states;
  Chain chain;
  chain.ap = atoms;
  for (std::size_t s = 0; s < n; ++s) {
    chain.names.push_back("s" + std::to_string(s));
    LabelSet labels;
    for (const auto& a : atoms)
      if (rng() % 2) labels.insert(a);
    chain.labels.push_back(std::move(labels));
  }
  chain.rows.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t k = 1 + rng() % std::min<std::size_t>(3, n);
    std::vector<std::uint32_t> targets;
    while (targets.size() < k) {
      std::uint32_t t = static_cast<std::uint32_t>(rng() % n);
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    std::vector<unsigned> weights(k);
    unsigned total = 0;
    for (auto& w : weights) total += (w = 1 + rng() % 9);
    for (std::size_t i = 0; i < k; ++i)
      chain.rows[s].emplace_back(targets[i], Rat(weights[i], total));
  }
  chain.init.assign(n, Rat(0));
  chain.init[0] = 1;
  verify_chain(chain);
  return chain;
}

/// Seeded random sparse model. Mostly-forward topology: state i branches to
/// up to `fanout` states within [i-band, i+band] (clamped), so reachability
/// systems stay banded and exact elimination has bounded fill-in; the final
/// states self-loop. Ids are zero-padded for stable lexicographic order.
inline Pts banded_pts(std::uint64_t seed, std::size_t n, std::size_t band, std::size_t fanout,
                      const std::vector<std::string>& atoms) {
  std::mt19937_64 rng(seed);
  auto pad = [n](std::size_t i) {
    std::string digits = std::to_string(i);
    std::string width = std::to_string(n - 1);
    return std::string(width.size() - digits.size(), '0') + digits;
  };
  Pts m;
  m.ap.insert(atoms.begin(), atoms.end());
  for (std::size_t i = 0; i < n; ++i) {
    LabelSet labels;
    for (const auto& a : atoms)
      if (rng() % 2) labels.insert(a);
    m.states["s" + pad(i)] = std::move(labels);
  }
  m.initial = "s" + pad(0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i > band ? i - band : 0;
    std::size_t hi = std::min(n - 1, i + band);
    std::size_t k = 1 + rng() % fanout;
    std::vector<std::size_t> targets;
    for (std::size_t tries = 0; targets.size() < k && tries < 4 * k; ++tries) {
      // Bias forward so mass drains toward the tail instead of cycling.
      std::size_t t = rng() % 4 == 0 ? lo + rng() % (hi - lo + 1)
                                     : std::min(n - 1, i + 1 + rng() % band);
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    std::vector<unsigned> weights(targets.size());
    unsigned total = 0;
    for (auto& w : weights) total += (w = 1 + rng() % 9);
    for (std::size_t j = 0; j < targets.size(); ++j)
      m.transitions["t" + pad(i) + "_" + pad(targets[j])] =
          Transition{"s" + pad(i), "s" + pad(targets[j]), Rat(weights[j], total)};
  }
  return m;
}

}  // namespace pmcp::testing
