#include <doctest.h>

#include <algorithm>

#include "pmcp/errors.hpp"
#include "pmcp/model_io.hpp"
#include "pmcp/pts.hpp"
#include "support/fixtures.hpp"

using namespace pmcp;
using pmcp::testing::triad;

namespace {

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("validate accepts the triad model") {
  CHECK(validate(triad()).empty());
}

TEST_CASE("validate reports missing outgoing mass") {
  Pts m = triad();
  m.transitions.erase("t01");
  auto violations = validate(m);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0] == "state s0 outgoing mass 1/2 != 1");
}

TEST_CASE("validate reports out-of-range probabilities") {
  Pts m = triad();
  m.transitions["t01"].prob = 0;
  auto violations = validate(m);
  CHECK(mentions(violations, "t01"));
  CHECK(mentions(violations, "out of (0,1]"));

  m.transitions["t01"].prob = Rat(3, 2);
  CHECK(mentions(validate(m), "out of (0,1]"));
}

TEST_CASE("validate rejects reserved ids, unknown labels and bad AP names") {
  Pts m = triad();
  m.states["s0"].insert("c");
  CHECK(mentions(validate(m), "\"c\""));

  m = triad();
  m.ap.insert("not ok");
  CHECK(mentions(validate(m), "not ok"));

  m = triad();
  m.states["__x"] = {};
  CHECK(mentions(validate(m), "reserved"));

  m = triad();
  m.initial = "nowhere";
  CHECK(mentions(validate(m), "initial"));
}

TEST_CASE("trace_prefix follows labels") {
  Pts m = triad();
  CHECK(trace_prefix(m, {"t02"}) == std::vector<LabelSet>{{"a"}, {"a", "b"}});
  CHECK(trace_prefix(m, {"t01", "t13"}) == std::vector<LabelSet>{{"a"}, {"a", "b"}, {"a"}});
  CHECK(trace_prefix(m, {}) == std::vector<LabelSet>{{"a"}});
}

TEST_CASE("trace_prefix names the first broken link") {
  Pts m = triad();
  CHECK_THROWS_WITH_AS(trace_prefix(m, {"t02", "t10"}),
                       doctest::Contains("step 2"), Error);
  CHECK_THROWS_WITH_AS(trace_prefix(m, {"t10"}),
                       doctest::Contains("step 1"), Error);
  CHECK_THROWS_WITH_AS(trace_prefix(m, {"zzz"}),
                       doctest::Contains("unknown transition"), Error);
}

TEST_CASE("minimal extension of {t01}") {
  Extension ext = build_minimal_extension(triad(), {"t01"});
  CHECK(ext.sink == "__sink");
  REQUIRE(ext.pts.states.size() == 3);  // s0, s1, sink
  CHECK(ext.pts.states.at("__sink") == LabelSet{});
  CHECK(ext.pts.states.at("s0") == LabelSet{"a"});
  CHECK(ext.pts.states.at("s1") == LabelSet{"a", "b"});
  CHECK(ext.pts.transitions.at("t01") == Transition{"s0", "s1", Rat(1, 2)});
  CHECK(ext.pts.transitions.at("__t_s0") == Transition{"s0", "__sink", Rat(1, 2)});
  CHECK(ext.pts.transitions.at("__t_s1") == Transition{"s1", "__sink", Rat(1)});
  CHECK(ext.pts.transitions.at("__t_sink") == Transition{"__sink", "__sink", Rat(1)});
  CHECK(ext.pts.transitions.size() == 4);
  CHECK(validate(ext.pts).empty());
  CHECK(check_extends(triad(), {"t01"}, ext.pts));
}

TEST_CASE("minimal extension of the empty search keeps only the initial state") {
  Extension ext = build_minimal_extension(triad(), {});
  CHECK(ext.pts.states.size() == 2);
  CHECK(ext.pts.transitions.at("__t_s0") == Transition{"s0", "__sink", Rat(1)});
  CHECK(ext.pts.transitions.size() == 2);
}

TEST_CASE("fully explored states get no completion transition") {
  Extension ext = build_minimal_extension(triad(), {"t01", "t10", "t13", "t33"});
  CHECK(ext.pts.transitions.count("__t_s1") == 0);  // out(s1) = 1
  CHECK(ext.pts.transitions.count("__t_s3") == 0);
  CHECK(ext.pts.transitions.at("__t_s0") == Transition{"s0", "__sink", Rat(1, 2)});
  CHECK(validate(ext.pts).empty());
}

TEST_CASE("top extension labels the sink with the full AP set") {
  Extension ext = build_top_extension(triad(), {"t01", "t02"});
  CHECK(ext.pts.states.at("__sink") == LabelSet{"a", "b"});
  CHECK(validate(ext.pts).empty());
  CHECK(check_extends(triad(), {"t01", "t02"}, ext.pts));

  Extension empty = build_top_extension(triad(), {});
  CHECK(empty.pts.states.at("__sink") == LabelSet{"a", "b"});
  CHECK(empty.pts.states.at("s0") == LabelSet{"a"});
}

TEST_CASE("check_extends on the diamond system") {
  CHECK(check_extends(triad(), {"t01", "t02"}, pmcp::testing::triad_diamond_extension()));
}

TEST_CASE("check_extends detects tampering") {
  Pts candidate = pmcp::testing::triad_diamond_extension();
  candidate.transitions["t01"].prob = Rat(1, 3);
  candidate.transitions["t02"].prob = Rat(2, 3);
  CHECK_FALSE(check_extends(triad(), {"t01", "t02"}, candidate));

  candidate = pmcp::testing::triad_diamond_extension();
  candidate.states["s1"] = {"a"};  // endpoint label must be preserved
  CHECK_FALSE(check_extends(triad(), {"t01", "t02"}, candidate));

  candidate = pmcp::testing::triad_diamond_extension();
  candidate.transitions.erase("t02");
  candidate.transitions["t01"].prob = Rat(1);
  CHECK_FALSE(check_extends(triad(), {"t01", "t02"}, candidate));
}

TEST_CASE("extension construction is deterministic") {
  std::string once = model_to_json(build_minimal_extension(triad(), {"t01", "t02"}).pts);
  std::string twice = model_to_json(build_minimal_extension(triad(), {"t01", "t02"}).pts);
  CHECK(once == twice);
}

TEST_CASE("prefix-trace agreement across extensions of the same search") {
  // Any search-only prefix must produce the same trace in any extension.
  Search search = {"t01", "t02"};
  Pts base = triad();
  Pts minimal = build_minimal_extension(base, search).pts;
  Pts diamond = pmcp::testing::triad_diamond_extension();
  for (const ExecPrefix& prefix : {ExecPrefix{}, {"t01"}, {"t02"}}) {
    auto expected = trace_prefix(base, prefix);
    CHECK(trace_prefix(minimal, prefix) == expected);
    CHECK(trace_prefix(diamond, prefix) == expected);
  }
}

TEST_CASE("measure agreement on explored cylinders") {
  // Products of search-transition probabilities agree between base and any
  // extension candidate.
  Search search = {"t01", "t10"};
  Pts base = triad();
  Pts minimal = build_minimal_extension(base, search).pts;
  for (const ExecPrefix& prefix : {ExecPrefix{"t01"}, {"t01", "t10"}, {"t01", "t10", "t01"}}) {
    Rat in_base = 1, in_ext = 1;
    for (const auto& id : prefix) {
      in_base *= base.transitions.at(id).prob;
      in_ext *= minimal.transitions.at(id).prob;
    }
    CHECK(in_base == in_ext);
  }
}

TEST_CASE("search validation rejects unknown transition ids") {
  CHECK_THROWS_AS(build_minimal_extension(triad(), {"nope"}), Error);
}

TEST_CASE("model JSON round-trips") {
  Pts m = triad();
  CHECK(parse_model_json(model_to_json(m)) == m);
}

TEST_CASE("model JSON loader reports structural problems") {
  CHECK_THROWS_WITH_AS(parse_model_json("{"), doctest::Contains("malformed JSON"), Error);
  CHECK_THROWS_WITH_AS(parse_model_json(R"({"ap":[]})"), doctest::Contains("missing"), Error);
  // prob must be a rational string, not a number or decimal
  std::string decimal_prob = R"({"ap":["a"],"initial":"s0",
    "states":[{"id":"s0","labels":["a"]}],
    "transitions":[{"id":"t","source":"s0","target":"s0","prob":"0.5"}]})";
  CHECK_THROWS_WITH_AS(parse_model_json(decimal_prob), doctest::Contains("rational"), Error);
  std::string dup = R"({"ap":["a"],"initial":"s0",
    "states":[{"id":"s0","labels":[]},{"id":"s0","labels":[]}],
    "transitions":[]})";
  CHECK_THROWS_WITH_AS(parse_model_json(dup), doctest::Contains("duplicate"), Error);
}

TEST_CASE("search JSON parses") {
  CHECK(parse_search_json(R"({"transitions":["t01","t02"]})") == Search{"t01", "t02"});
  CHECK_THROWS_AS(parse_search_json(R"({"transitions":"t01"})"), Error);
}
