#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "oaid/rational.hpp"

using oaid::Rational;

TEST_CASE("construction canonicalizes to lowest terms, positive denominator") {
  CHECK(Rational().str() == "0");
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(-3).str() == "-3");
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(1, -2).str() == "-1/2");
  CHECK(Rational(-6, -4).str() == "3/2");
  CHECK(Rational(0, 5).str() == "0");
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2).den() > 0);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("long long construction is exact") {
  CHECK(Rational(1234567890123456789LL).str() == "1234567890123456789");
  CHECK(Rational(-1234567890123456789LL).str() == "-1234567890123456789");
  CHECK(Rational(1, 1234567890123456789LL).str() == "1/1234567890123456789");
}

TEST_CASE("parse") {
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("-5") == Rational(-5));
  CHECK(Rational::parse("-7/14") == Rational(-1, 2));
  CHECK(Rational::parse("0/9").is_zero());
  CHECK(Rational::parse("123456789123456789123456789/3").str() ==
        "41152263041152263041152263");
  CHECK_THROWS_AS(Rational::parse(""), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("a/b"), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK((Rational(1, 2) - Rational(1, 2)).is_zero());
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(3, 7) == Rational(-3, 7));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);

  // No drift over many small steps: sum of 1/k - 1/k telescopes to zero.
  Rational s;
  for (int k = 1; k <= 200; ++k) s += Rational(1, k);
  for (int k = 1; k <= 200; ++k) s -= Rational(1, k);
  CHECK(s.is_zero());
}

TEST_CASE("comparisons order by value") {
  CHECK(Rational(-2) < Rational(-1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(0) < Rational(1, 3));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(1, 2) <= Rational(2, 4));
  CHECK(Rational(3, 2) > Rational(1));
  CHECK(Rational(5, 10) >= Rational(1, 2));
  CHECK(Rational(1, 3) != Rational(1, 4));
}

TEST_CASE("accessors") {
  const Rational x(-6, 8);
  CHECK(x.num() == -3);
  CHECK(x.den() == 4);
  CHECK(x.sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(9, 3).is_integer());
  CHECK_FALSE(Rational(1, 3).is_integer());
  CHECK(x.abs() == Rational(3, 4));
  CHECK(Rational(3, 4).abs() == Rational(3, 4));
}
