#include <doctest.h>

#include "rfb/errors.hpp"
#include "rfb/fraction.hpp"

using namespace rfb;

TEST_CASE("fractions normalize to lowest terms with positive denominator") {
  Fraction f(4, 10);
  CHECK(f.num == 2);
  CHECK(f.den == 5);
  Fraction g(3, -9);
  CHECK(g.num == -1);
  CHECK(g.den == 3);
  CHECK(Fraction(0, 7) == Fraction::of(0));
}

TEST_CASE("arithmetic is exact") {
  Fraction a(2, 5), b(1, 5), c(2, 5);
  CHECK(a + b + c == Fraction::of(1));
  CHECK(Fraction(1, 3) - Fraction(1, 4) == Fraction(1, 12));
  CHECK(Fraction(3, 4) * Fraction(2, 3) == Fraction(1, 2));
  CHECK(Fraction(1, 2) / Fraction(1, 6) == Fraction::of(3));
  CHECK(Fraction(1, 3) < Fraction(1, 2));
}

TEST_CASE("zero denominator and division by zero are rejected") {
  CHECK_THROWS_AS(Fraction(1, 0), ParseError);
  CHECK_THROWS_AS(Fraction(1, 2) / Fraction::of(0), ParseError);
}

TEST_CASE("overflow is reported, not wrapped") {
  // Two denominators near 2^62 whose product cannot be reduced.
  std::int64_t p1 = 4611686018427387847LL;  // prime-ish large values
  std::int64_t p2 = 4611686018427387817LL;
  CHECK_THROWS_AS(Fraction(1, p1) + Fraction(1, p2), OverflowError);
  CHECK_THROWS_AS(checked_mul(p1, p2), OverflowError);
  CHECK_THROWS_AS(checked_lcm(p1, p2), OverflowError);
}

TEST_CASE("large values that cancel do not spuriously overflow") {
  std::int64_t big = 3037000499LL;
  Fraction x(1, big);
  CHECK(x + x == Fraction(2, big));
  CHECK((x - x) == Fraction::of(0));
}

TEST_CASE("extended Euclid returns a minimal-|a| certificate") {
  Bezout bz = extended_gcd(3, 5);
  CHECK(bz.g == 1);
  CHECK(bz.a == 2);
  CHECK(bz.b == -1);
  CHECK(bz.a * 3 + bz.b * 5 == 1);

  for (std::int64_t x = 1; x <= 12; ++x) {
    for (std::int64_t y = 1; y <= 12; ++y) {
      Bezout b2 = extended_gcd(x, y);
      CHECK(b2.a * x + b2.b * y == b2.g);
      CHECK(b2.g == checked_gcd(x, y));
      std::int64_t step = y / b2.g;
      if (step > 1) CHECK(2 * (b2.a < 0 ? -b2.a : b2.a) <= step + 1);
    }
  }
}

TEST_CASE("wrap_unit reduces into [-1, 1)") {
  CHECK(wrap_unit(Fraction(5, 2)) == Fraction(1, 2));
  CHECK(wrap_unit(Fraction(-5, 2)) == Fraction(-1, 2));
  CHECK(wrap_unit(Fraction::of(1)) == Fraction::of(-1));
  CHECK(wrap_unit(Fraction::of(-1)) == Fraction::of(-1));
  CHECK(wrap_unit(Fraction(7, 3)) == Fraction(1, 3));
  CHECK(wrap_unit(Fraction(-11, 5)) == Fraction(-1, 5));
}

TEST_CASE("fraction parsing") {
  CHECK(parse_fraction("2/5") == Fraction(2, 5));
  CHECK(parse_fraction("7") == Fraction::of(7));
  CHECK(parse_fraction("-3/9") == Fraction(-1, 3));
  CHECK_THROWS_AS(parse_fraction("1/0"), ParseError);
  CHECK_THROWS_AS(parse_fraction("a/b"), ParseError);
  CHECK_THROWS_AS(parse_fraction(""), ParseError);
  CHECK_THROWS_AS(parse_fraction("1.5"), ParseError);
}
