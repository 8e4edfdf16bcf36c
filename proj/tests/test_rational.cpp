#include <stdexcept>

#include "doctest.h"
#include "twoway/rational.hpp"

using twoway::Rat;

TEST_CASE("rational arithmetic and normalization") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 2) * Rat(2, 3) == Rat(1, 3));
  CHECK(Rat(7, 3) - Rat(1, 3) == Rat(2));
  CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
  CHECK(Rat(3, 7) < Rat(1, 2));
  CHECK(Rat(-1, 2).sign() == -1);
  CHECK(Rat(5).is_integer());
  CHECK_FALSE(Rat(5, 3).is_integer());
}

TEST_CASE("rational formatting and parsing") {
  CHECK(Rat(3).str() == "3");
  CHECK(Rat(-2, 7).str() == "-2/7");
  CHECK(Rat::parse("5/15") == Rat(1, 3));
  CHECK(Rat::parse("-4") == Rat(-4));
  CHECK_THROWS_AS(Rat::parse("2/x"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1/2x"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse(""), std::invalid_argument);
  CHECK(Rat(1, 3).to_double() == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("rational guards") {
  CHECK_THROWS(Rat(1, 0));
  CHECK_THROWS(Rat(1) / Rat(0));
}
