#include "pmcp/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pmcp/errors.hpp"

namespace pmcp {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(where + ": missing field \"" + key + "\"");
  return *it;
}

std::string string_field(const ordered_json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) throw Error(where + ": field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

Rat prob_field(const ordered_json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string())
    throw Error(where + ": field \"" + key + "\" must be a rational string like \"1/2\"");
  try {
    return rat_from_string(v.get<std::string>());
  } catch (const Error& e) {
    throw Error(where + ": " + e.what());
  }
}

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Pts parse_model_json(const std::string& text) {
  ordered_json doc = parse(text);
  if (!doc.is_object()) throw Error("model: top level must be an object");

  Pts model;
  const auto& ap = field(doc, "ap", "model");
  if (!ap.is_array()) throw Error("model: \"ap\" must be an array of strings");
  for (const auto& a : ap) {
    if (!a.is_string()) throw Error("model: \"ap\" must be an array of strings");
    if (!model.ap.insert(a.get<std::string>()).second)
      throw Error("model: duplicate atomic proposition \"" + a.get<std::string>() + "\"");
  }

  model.initial = string_field(doc, "initial", "model");

  const auto& states = field(doc, "states", "model");
  if (!states.is_array()) throw Error("model: \"states\" must be an array");
  for (const auto& s : states) {
    std::string id = string_field(s, "id", "state");
    LabelSet labels;
    const auto& ls = field(s, "labels", "state " + id);
    if (!ls.is_array()) throw Error("state " + id + ": \"labels\" must be an array");
    for (const auto& l : ls) {
      if (!l.is_string()) throw Error("state " + id + ": labels must be strings");
      labels.insert(l.get<std::string>());
    }
    if (!model.states.emplace(id, std::move(labels)).second)
      throw Error("model: duplicate state id \"" + id + "\"");
  }

  const auto& transitions = field(doc, "transitions", "model");
  if (!transitions.is_array()) throw Error("model: \"transitions\" must be an array");
  for (const auto& t : transitions) {
    std::string id = string_field(t, "id", "transition");
    Transition tr;
    tr.source = string_field(t, "source", "transition " + id);
    tr.target = string_field(t, "target", "transition " + id);
    tr.prob = prob_field(t, "prob", "transition " + id);
    if (!model.transitions.emplace(id, std::move(tr)).second)
      throw Error("model: duplicate transition id \"" + id + "\"");
  }
  return model;
}

Pts load_model(const std::string& path) {
  try {
    return parse_model_json(read_file(path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string model_to_json(const Pts& model) {
  ordered_json doc;
  doc["ap"] = ordered_json::array();
  for (const auto& a : model.ap) doc["ap"].push_back(a);
  doc["initial"] = model.initial;
  doc["states"] = ordered_json::array();
  for (const auto& [id, labels] : model.states) {
    ordered_json s;
    s["id"] = id;
    s["labels"] = ordered_json::array();
    for (const auto& l : labels) s["labels"].push_back(l);
    doc["states"].push_back(std::move(s));
  }
  doc["transitions"] = ordered_json::array();
  for (const auto& [id, t] : model.transitions) {
    ordered_json tr;
    tr["id"] = id;
    tr["source"] = t.source;
    tr["target"] = t.target;
    tr["prob"] = rat_to_string(t.prob);
    doc["transitions"].push_back(std::move(tr));
  }
  return doc.dump(2) + "\n";
}

Search parse_search_json(const std::string& text) {
  ordered_json doc = parse(text);
  if (!doc.is_object()) throw Error("search: top level must be an object");
  const auto& ts = field(doc, "transitions", "search");
  if (!ts.is_array()) throw Error("search: \"transitions\" must be an array of strings");
  Search search;
  for (const auto& t : ts) {
    if (!t.is_string()) throw Error("search: \"transitions\" must be an array of strings");
    search.insert(t.get<std::string>());
  }
  return search;
}

Search load_search(const std::string& path) {
  try {
    return parse_search_json(read_file(path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace pmcp
