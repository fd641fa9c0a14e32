#pragma once

#include <string>

#include "pmcp/pts.hpp"

namespace pmcp {

/// Parses the model JSON format:
///   { "ap": ["a","b"], "initial": "s0",
///     "states": [ {"id":"s0","labels":["a"]}, ... ],
///     "transitions": [ {"id":"t01","source":"s0","target":"s1","prob":"1/2"}, ... ] }
/// prob is a rational string ("num/den" or an integer); decimal strings are
/// rejected. Structural problems (duplicate ids, missing fields, bad
/// rationals) throw Error with a location hint; semantic invariants are
/// left to validate().
Pts parse_model_json(const std::string& text);
Pts load_model(const std::string& path);

/// Deterministic serialization of a model back to the JSON format above.
std::string model_to_json(const Pts& model);

/// Parses the search JSON format: { "transitions": ["t01","t02"] }.
Search parse_search_json(const std::string& text);
Search load_search(const std::string& path);

}  // namespace pmcp
