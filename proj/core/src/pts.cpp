#include "pmcp/pts.hpp"

#include <cctype>

#include "pmcp/errors.hpp"

namespace pmcp {

namespace {

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool reserved_prefix(const std::string& id) { return id.rfind("__", 0) == 0; }

// Ids beginning with "__" are reserved for generated names; only the exact
// forms produced by the extension constructions are admissible.
bool admissible_state_id(const std::string& id) {
  return !reserved_prefix(id) || id == kSinkId;
}

bool admissible_transition_id(const Pts& model, const std::string& id) {
  if (!reserved_prefix(id)) return true;
  if (id == kSinkLoopId) return true;
  if (id.rfind(kCompletionPrefix, 0) == 0)
    return model.states.count(id.substr(std::string(kCompletionPrefix).size())) > 0;
  return false;
}

Extension build_extension(const Pts& model, const Search& search, bool label_sink_with_ap) {
  require_valid_search(model, search);
  if (model.states.count(kSinkId))
    throw Error("model already contains the generated sink state \"" + std::string(kSinkId) + "\"");

  Extension ext;
  ext.sink = kSinkId;
  ext.pts.ap = model.ap;
  ext.pts.initial = model.initial;

  // Endpoints of the search plus the initial state.
  std::set<std::string> kept;
  kept.insert(model.initial);
  for (const auto& id : search) {
    const Transition& t = model.transitions.at(id);
    kept.insert(t.source);
    kept.insert(t.target);
  }
  for (const auto& s : kept) ext.pts.states[s] = model.states.at(s);
  ext.pts.states[ext.sink] = label_sink_with_ap ? LabelSet(model.ap.begin(), model.ap.end())
                                                : LabelSet{};

  std::map<std::string, Rat> out;
  for (const auto& s : kept) out[s] = 0;
  for (const auto& id : search) {
    const Transition& t = model.transitions.at(id);
    ext.pts.transitions[id] = t;
    out[t.source] += t.prob;
  }
  for (const auto& [s, mass] : out) {
    if (mass < 1) {
      std::string tid = kCompletionPrefix + s;
      if (tid == kSinkLoopId || ext.pts.transitions.count(tid))
        throw Error("generated transition id \"" + tid + "\" collides; rename state \"" + s + "\"");
      ext.pts.transitions[tid] = Transition{s, ext.sink, Rat(1) - mass};
    }
  }
  ext.pts.transitions[kSinkLoopId] = Transition{ext.sink, ext.sink, Rat(1)};
  return ext;
}

}  // namespace

std::vector<std::string> validate(const Pts& model) {
  std::vector<std::string> violations;

  for (const auto& name : model.ap)
    if (!valid_name(name))
      violations.push_back("atomic proposition \"" + name + "\" is not a nonempty word over [a-zA-Z0-9_]");

  for (const auto& [id, labels] : model.states) {
    if (id.empty()) violations.push_back("empty state id");
    if (!admissible_state_id(id))
      violations.push_back("state id \"" + id + "\" uses the reserved \"__\" prefix");
    for (const auto& l : labels)
      if (!model.ap.count(l))
        violations.push_back("state " + id + " labeled with \"" + l + "\" which is not in the declared AP set");
  }

  if (!model.states.count(model.initial))
    violations.push_back("initial state \"" + model.initial + "\" is not a state");

  std::map<std::string, Rat> out;
  for (const auto& [id, _] : model.states) out[id] = 0;
  for (const auto& [id, t] : model.transitions) {
    if (id.empty()) violations.push_back("empty transition id");
    if (!admissible_transition_id(model, id))
      violations.push_back("transition id \"" + id + "\" uses the reserved \"__\" prefix");
    bool endpoints_ok = true;
    if (!model.states.count(t.source)) {
      violations.push_back("transition " + id + " source \"" + t.source + "\" is not a state");
      endpoints_ok = false;
    }
    if (!model.states.count(t.target))
      violations.push_back("transition " + id + " target \"" + t.target + "\" is not a state");
    if (t.prob <= 0 || t.prob > 1)
      violations.push_back("transition " + id + " prob " + rat_to_string(t.prob) + " out of (0,1]");
    if (endpoints_ok) out[t.source] += t.prob;
  }
  for (const auto& [s, mass] : out)
    if (mass != 1)
      violations.push_back("state " + s + " outgoing mass " + rat_to_string(mass) + " != 1");

  return violations;
}

void require_valid_search(const Pts& model, const Search& search) {
  for (const auto& id : search)
    if (!model.transitions.count(id))
      throw Error("search names unknown transition \"" + id + "\"");
}

void require_valid_prefix(const Pts& model, const ExecPrefix& prefix) {
  std::string at = model.initial;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    auto it = model.transitions.find(prefix[i]);
    if (it == model.transitions.end())
      throw Error("prefix step " + std::to_string(i + 1) + ": unknown transition \"" + prefix[i] + "\"");
    if (it->second.source != at)
      throw Error("prefix step " + std::to_string(i + 1) + ": transition " + prefix[i] +
                  " starts at " + it->second.source + " but the path is at " + at);
    at = it->second.target;
  }
}

std::vector<LabelSet> trace_prefix(const Pts& model, const ExecPrefix& prefix) {
  require_valid_prefix(model, prefix);
  std::vector<LabelSet> trace;
  trace.reserve(prefix.size() + 1);
  trace.push_back(model.states.at(model.initial));
  for (const auto& id : prefix) trace.push_back(model.states.at(model.transitions.at(id).target));
  return trace;
}

Extension build_minimal_extension(const Pts& model, const Search& search) {
  return build_extension(model, search, /*label_sink_with_ap=*/false);
}

Extension build_top_extension(const Pts& model, const Search& search) {
  return build_extension(model, search, /*label_sink_with_ap=*/true);
}

bool check_extends(const Pts& base, const Search& search, const Pts& candidate) {
  require_valid_search(base, search);
  if (!validate(candidate).empty()) return false;
  if (candidate.initial != base.initial) return false;
  auto labels_match = [&](const std::string& s) {
    auto it = candidate.states.find(s);
    return it != candidate.states.end() && it->second == base.states.at(s);
  };
  if (!labels_match(base.initial)) return false;
  for (const auto& id : search) {
    const Transition& t = base.transitions.at(id);
    auto it = candidate.transitions.find(id);
    if (it == candidate.transitions.end()) return false;
    if (it->second != t) return false;
    if (!labels_match(t.source) || !labels_match(t.target)) return false;
  }
  return true;
}

}  // namespace pmcp
