#include "pmcp/chain.hpp"

#include <map>

#include "pmcp/errors.hpp"

namespace pmcp {

void verify_chain(const Chain& chain) {
  const std::size_t n = chain.size();
  if (chain.rows.size() != n || chain.init.size() != n || chain.names.size() != n)
    throw Error("chain: inconsistent sizes");
  for (std::size_t s = 0; s < n; ++s) {
    Rat sum = 0;
    for (const auto& [t, p] : chain.rows[s]) {
      if (t >= n) throw Error("chain: row " + chain.names[s] + " targets unknown state");
      if (p <= 0) throw Error("chain: row " + chain.names[s] + " has a non-positive entry");
      sum += p;
    }
    if (sum != 1)
      throw Error("chain: row " + chain.names[s] + " sums to " + rat_to_string(sum) + " != 1");
  }
  Rat mass = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (chain.init[s] < 0) throw Error("chain: negative initial mass at " + chain.names[s]);
    mass += chain.init[s];
  }
  if (mass != 1) throw Error("chain: initial mass " + rat_to_string(mass) + " != 1");
}

Chain chain_of(const Pts& model) {
  Chain chain;
  chain.ap.assign(model.ap.begin(), model.ap.end());

  std::map<std::string, std::uint32_t> index;
  for (const auto& [id, labels] : model.states) {
    index[id] = static_cast<std::uint32_t>(chain.names.size());
    chain.names.push_back(id);
    chain.labels.push_back(labels);
  }

  std::vector<std::map<std::uint32_t, Rat>> merged(chain.size());
  for (const auto& [id, t] : model.transitions)
    merged[index.at(t.source)][index.at(t.target)] += t.prob;

  chain.rows.resize(chain.size());
  for (std::size_t s = 0; s < chain.size(); ++s)
    for (const auto& [t, p] : merged[s]) chain.rows[s].emplace_back(t, p);

  chain.init.assign(chain.size(), Rat(0));
  chain.init[index.at(model.initial)] = 1;

  verify_chain(chain);
  return chain;
}

std::uint32_t state_index(const Chain& chain, const std::string& name) {
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (chain.names[i] == name) return static_cast<std::uint32_t>(i);
  throw Error("chain has no state named \"" + name + "\"");
}

}  // namespace pmcp
