#include "doctest.h"
#include "ewt/error.hpp"
#include "ewt/rational.hpp"

using namespace ewt;

TEST_SUITE("rational") {
  TEST_CASE("normal form and arithmetic") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(4, 3) + Rational(1, 6) == Rational(3, 2));
    CHECK(Rational(4, 3) + Rational(3) * (Rational(7, 5) - Rational(4, 3)) == Rational(23, 15));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(11, 6).str() == "11/6");
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
  }

  TEST_CASE("infinity sits above every finite value") {
    Rational inf = Rational::infinity();
    CHECK(inf.is_inf());
    CHECK(Rational(1000000) < inf);
    CHECK(min(inf, Rational(2)) == Rational(2));
    CHECK(inf.str() == "inf");
    CHECK(Rational::parse("inf") == inf);
  }

  TEST_CASE("overflow is reported") {
    Rational big(INT64_MAX / 2);
    CHECK_THROWS_AS(big * Rational(3), Error);
    CHECK_THROWS_AS(Rational(1, 0), Error);
  }
}
