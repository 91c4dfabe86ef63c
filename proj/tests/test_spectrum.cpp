#include <doctest.h>

#include "rfb/errors.hpp"
#include "rfb/spectrum.hpp"

using namespace rfb;

TEST_CASE("masks normalize, wrap and merge") {
  // [3/4, 5/4) wraps into [3/4, 1) u [-1, -3/4).
  SpectrumMask m = make_mask({{Fraction(3, 4), Fraction(5, 4)}});
  REQUIRE(m.intervals.size() == 2);
  CHECK(m.intervals[0].lo == Fraction(-1, 1));
  CHECK(m.intervals[0].hi == Fraction(-3, 4));
  CHECK(m.intervals[1].lo == Fraction(3, 4));
  CHECK(m.intervals[1].hi == Fraction(1, 1));
  CHECK(m.measure() == Fraction(1, 2));

  SpectrumMask touching = make_mask({{Fraction(0, 1), Fraction(1, 4)},
                                     {Fraction(1, 4), Fraction(1, 2)}});
  CHECK(touching.intervals.size() == 1);
  CHECK(touching.measure() == Fraction(1, 2));
}

TEST_CASE("membership respects half-open ends") {
  SpectrumMask m = make_mask({{Fraction(-1, 2), Fraction(1, 2)}});
  CHECK(m.contains(Fraction(-1, 2)));
  CHECK(m.contains(Fraction(0, 1)));
  CHECK_FALSE(m.contains(Fraction(1, 2)));
}

TEST_CASE("complement partitions the window") {
  SpectrumMask m = make_mask({{Fraction(-1, 1), Fraction(-4, 5)},
                              {Fraction(4, 5), Fraction(1, 1)}});
  SpectrumMask c = complement(m);
  REQUIRE(c.intervals.size() == 1);
  CHECK(c.intervals[0].lo == Fraction(-4, 5));
  CHECK(c.intervals[0].hi == Fraction(4, 5));
  CHECK(complement(full_mask()).empty());
  CHECK((m.measure() + c.measure()) == Fraction(2, 1));
  CHECK(complement(complement(m)) == m);
}

TEST_CASE("dilation widens and wraps") {
  SpectrumMask pass = make_mask({{Fraction(-1, 1), Fraction(-4, 5)},
                                 {Fraction(4, 5), Fraction(1, 1)}});
  SpectrumMask fat = dilate(pass, Fraction(1, 20));
  // [-1,-4/5) grows to [-1,-3/4) plus the wrapped sliver [19/20, 1).
  CHECK(fat.contains(Fraction(-31, 40)));
  CHECK(fat.contains(Fraction(31, 40)));
  CHECK(fat.measure() == Fraction(1, 2));
  SpectrumMask sb = complement(fat);
  REQUIRE(sb.intervals.size() == 1);
  CHECK(sb.intervals[0].lo == Fraction(-3, 4));
  CHECK(sb.intervals[0].hi == Fraction(3, 4));
}

TEST_CASE("union merges overlap") {
  SpectrumMask a = make_mask({{Fraction(0, 1), Fraction(1, 2)}});
  SpectrumMask b = make_mask({{Fraction(1, 4), Fraction(3, 4)}});
  SpectrumMask u = mask_union(a, b);
  REQUIRE(u.intervals.size() == 1);
  CHECK(u.measure() == Fraction(3, 4));
}
