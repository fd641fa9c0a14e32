#include <doctest.h>

#include "pmcp/errors.hpp"
#include "pmcp/rational.hpp"

using namespace pmcp;

TEST_CASE("rational parsing accepts num/den and integers") {
  CHECK(rat_from_string("1/2") == Rat(1, 2));
  CHECK(rat_from_string("1") == Rat(1));
  CHECK(rat_from_string("2/4") == Rat(1, 2));  // canonicalized
  CHECK(rat_from_string("-1/3") == Rat(-1, 3));
  CHECK(rat_from_string("0") == Rat(0));
}

TEST_CASE("rational parsing rejects decimals and garbage") {
  CHECK_THROWS_AS(rat_from_string("0.5"), ParseError);
  CHECK_THROWS_AS(rat_from_string("5e-1"), ParseError);
  CHECK_THROWS_AS(rat_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rat_from_string(""), ParseError);
  CHECK_THROWS_AS(rat_from_string("a/b"), ParseError);
}

TEST_CASE("rational printing is canonical") {
  CHECK(rat_to_string(Rat(1, 2)) == "1/2");
  CHECK(rat_to_string(Rat(1)) == "1");
  CHECK(rat_to_string(Rat(0)) == "0");
  CHECK(rat_to_string(rat_from_string("6/4")) == "3/2");
}

TEST_CASE("decimal approximation has six places, half away from zero") {
  CHECK(rat_to_decimal(Rat(1, 4)) == "0.250000");
  CHECK(rat_to_decimal(Rat(1)) == "1.000000");
  CHECK(rat_to_decimal(Rat(1, 3)) == "0.333333");
  CHECK(rat_to_decimal(Rat(2, 3)) == "0.666667");
  CHECK(rat_to_decimal(Rat(1, 2000000)) == "0.000001");  // rounds up at the half
  CHECK(rat_to_decimal(Rat(-1, 3)) == "-0.333333");
}
