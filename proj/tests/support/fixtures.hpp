#pragma once

#include "pmcp/pts.hpp"

namespace pmcp::testing {

// Four states, six transitions; a holds everywhere, b at s1 and s2.
inline Pts triad() {
  Pts m;
  m.ap = {"a", "b"};
  m.initial = "s0";
  m.states = {{"s0", {"a"}}, {"s1", {"a", "b"}}, {"s2", {"a", "b"}}, {"s3", {"a"}}};
  m.transitions = {
      {"t01", {"s0", "s1", Rat(1, 2)}}, {"t02", {"s0", "s2", Rat(1, 2)}},
      {"t10", {"s1", "s0", Rat(1, 2)}}, {"t13", {"s1", "s3", Rat(1, 2)}},
      {"t22", {"s2", "s2", Rat(1)}},    {"t33", {"s3", "s3", Rat(1)}},
  };
  return m;
}

// s0 {a} with a 1/2 self-loop and 1/2 to the unlabeled absorbing s1.
inline Pts half_loop() {
  Pts m;
  m.ap = {"a"};
  m.initial = "s0";
  m.states = {{"s0", {"a"}}, {"s1", {}}};
  m.transitions = {
      {"t00", {"s0", "s0", Rat(1, 2)}},
      {"t01", {"s0", "s1", Rat(1, 2)}},
      {"t11", {"s1", "s1", Rat(1)}},
  };
  return m;
}

// s0 -> s1 with probability one; a holds only at the absorbing s1.
inline Pts straight_line() {
  Pts m;
  m.ap = {"a"};
  m.initial = "s0";
  m.states = {{"s0", {}}, {"s1", {"a"}}};
  m.transitions = {
      {"t01", {"s0", "s1", Rat(1)}},
      {"t11", {"s1", "s1", Rat(1)}},
  };
  return m;
}

// The diamond system extending the triad search {t01, t02}: both branches
// meet in a fresh absorbing state.
inline Pts triad_diamond_extension() {
  Pts m;
  m.ap = {"a", "b"};
  m.initial = "s0";
  m.states = {{"s0", {"a"}}, {"s1", {"a", "b"}}, {"s2", {"a", "b"}}, {"s3", {"a"}}};
  m.transitions = {
      {"t01", {"s0", "s1", Rat(1, 2)}},
      {"t02", {"s0", "s2", Rat(1, 2)}},
      {"u13", {"s1", "s3", Rat(1)}},
      {"u23", {"s2", "s3", Rat(1)}},
      {"u33", {"s3", "s3", Rat(1)}},
  };
  return m;
}

}  // namespace pmcp::testing
