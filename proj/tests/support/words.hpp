#pragma once

#include <cstdint>
#include <vector>

#include "pmcp/formula.hpp"

namespace pmcp::testing {

/// All label sets over the given atoms (2^|atoms| letters, bit order).
inline std::vector<LabelSet> all_letters(const std::vector<std::string>& atoms) {
  std::vector<LabelSet> letters;
  for (std::uint32_t mask = 0; mask < (1u << atoms.size()); ++mask) {
    LabelSet letter;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask & (1u << i)) letter.insert(atoms[i]);
    letters.push_back(std::move(letter));
  }
  return letters;
}

/// All words over `letters` of length min_len..max_len, shortest first.
inline std::vector<std::vector<LabelSet>> all_sequences(const std::vector<LabelSet>& letters,
                                                        std::size_t min_len, std::size_t max_len) {
  std::vector<std::vector<LabelSet>> out;
  std::vector<std::vector<LabelSet>> frontier{{}};
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (len >= min_len)
      for (const auto& w : frontier) out.push_back(w);
    if (len == max_len) break;
    std::vector<std::vector<LabelSet>> next;
    next.reserve(frontier.size() * letters.size());
    for (const auto& w : frontier)
      for (const auto& l : letters) {
        auto w2 = w;
        w2.push_back(l);
        next.push_back(std::move(w2));
      }
    frontier = std::move(next);
  }
  return out;
}

/// All ultimately periodic words with |prefix| <= max_prefix and a nonempty
/// loop of length <= max_loop.
inline std::vector<UpWord> all_up_words(const std::vector<std::string>& atoms,
                                        std::size_t max_prefix, std::size_t max_loop) {
  auto letters = all_letters(atoms);
  auto prefixes = all_sequences(letters, 0, max_prefix);
  auto loops = all_sequences(letters, 1, max_loop);
  std::vector<UpWord> words;
  words.reserve(prefixes.size() * loops.size());
  for (const auto& u : prefixes)
    for (const auto& v : loops) words.push_back({u, v});
  return words;
}

}  // namespace pmcp::testing
