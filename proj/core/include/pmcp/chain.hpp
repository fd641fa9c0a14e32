#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pmcp/pts.hpp"

namespace pmcp {

/// Finite Markov chain over exact rationals. Rows are sparse successor
/// lists with positive entries summing to exactly 1; init is a (sub)state
/// distribution summing to exactly 1. Names are diagnostic only.
struct Chain {
  std::vector<std::string> ap;
  std::vector<std::string> names;
  std::vector<LabelSet> labels;
  std::vector<std::vector<std::pair<std::uint32_t, Rat>>> rows;
  std::vector<Rat> init;

  std::size_t size() const { return labels.size(); }
};

/// Throws Error unless every row sums to exactly 1 with positive entries
/// and the initial distribution is nonnegative with total mass exactly 1.
void verify_chain(const Chain& chain);

/// Transcribes a valid model into a chain: states in sorted-id order,
/// parallel edges between the same state pair merged by summing, and a
/// point-mass initial distribution at the model's initial state.
Chain chain_of(const Pts& model);

/// Index of a state by (diagnostic) name; throws if absent.
std::uint32_t state_index(const Chain& chain, const std::string& name);

}  // namespace pmcp
