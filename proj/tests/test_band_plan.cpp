#include <doctest.h>

#include "rfb/band_plan.hpp"
#include "rfb/errors.hpp"
#include "rfb/optimizer.hpp"
#include "test_support.hpp"

using namespace rfb;

TEST_CASE("mapping dimensions for the worked bands") {
  MappingDims d1 = mapping_dims(Fraction(2, 5), Fraction(1, 1));
  CHECK(d1.rows == 3);
  CHECK(d1.cols == 5);

  MappingDims d2 = mapping_dims(Fraction(1, 3), Fraction(1, 1));
  CHECK(d2.rows == 4);  // both edges odd: doubled
  CHECK(d2.cols == 6);

  MappingDims d3 = mapping_dims(Fraction(0, 1), Fraction(1, 1));
  CHECK(d3.rows == 1);
  CHECK(d3.cols == 1);
}

TEST_CASE("mapping_dims rejects bad bands") {
  CHECK_THROWS_AS(mapping_dims(Fraction(1, 2), Fraction(1, 2)), InvalidPartition);
  CHECK_THROWS_AS(mapping_dims(Fraction(2, 3), Fraction(1, 3)), InvalidPartition);
  CHECK_THROWS_AS(mapping_dims(Fraction(-1, 4), Fraction(1, 2)), InvalidPartition);
  CHECK_THROWS_AS(mapping_dims(Fraction(1, 2), Fraction(3, 2)), InvalidPartition);
}

TEST_CASE("three-band plan: {2/5, 1/5, 2/5}") {
  BankPlan plan = plan_bank({Fraction(2, 5), Fraction(1, 5), Fraction(2, 5)});
  CHECK(plan.S == 10);
  CHECK(plan.rowCounts == std::vector<std::int64_t>{4, 2, 4});
  CHECK(plan.residueCounts == std::vector<std::int64_t>{2, 2, 2});
  CHECK(plan.channels[0].rowOffset == 0);
  CHECK(plan.channels[1].rowOffset == 4);
  CHECK(plan.channels[2].rowOffset == 6);
  CHECK(plan.channels[2].doubled);
  CHECK(plan.channels[2].Rdim == 4);
  CHECK(plan.channels[2].Sdim == 10);
}

TEST_CASE("four-band plan: {2/9, 1/3, 1/3, 1/9}") {
  BankPlan plan = plan_bank({Fraction(2, 9), Fraction(1, 3), Fraction(1, 3), Fraction(1, 9)});
  CHECK(plan.S == 9);
  CHECK(plan.rowCounts == std::vector<std::int64_t>{2, 3, 3, 1});
  CHECK(plan.residueCounts == std::vector<std::int64_t>{1, 3, 3, 1});
}

TEST_CASE("single full-band channel") {
  BankPlan plan = plan_bank({Fraction(1, 1)});
  CHECK(plan.S == 1);
  CHECK(plan.rowCounts == std::vector<std::int64_t>{1});
  CHECK(plan.residueCounts == std::vector<std::int64_t>{1});
}

TEST_CASE("bad partitions are rejected") {
  CHECK_THROWS_AS(plan_bank({}), InvalidPartition);
  CHECK_THROWS_AS(plan_bank({Fraction(1, 2), Fraction(1, 3)}), InvalidPartition);
  CHECK_THROWS_AS(plan_bank({Fraction(1, 2), Fraction(2, 3)}), InvalidPartition);
  CHECK_THROWS_AS(plan_bank({Fraction(0, 1), Fraction(1, 1)}), InvalidPartition);
}

TEST_CASE("planning overflow surfaces as an error") {
  std::int64_t p1 = 4611686018427387847LL;
  std::int64_t p2 = 4611686018427387817LL;
  CHECK_THROWS_AS(plan_bank({Fraction(1, p1), Fraction(1, p2), Fraction(1, 2)}),
                  OverflowError);
}

TEST_CASE("random partitions keep every plan invariant") {
  SeededUniform rng(20240811);
  for (int trial = 0; trial < 1000; ++trial) {
    auto partition = rfbtest::random_partition(rng);
    BankPlan plan = plan_bank(partition);

    std::int64_t total = 0;
    Fraction edge = Fraction::of(0);
    for (std::size_t n = 0; n < plan.channels.size(); ++n) {
      const ChannelPlan& ch = plan.channels[n];
      CHECK(ch.lo == edge);
      edge = edge + partition[n];
      CHECK(ch.hi == edge);
      CHECK(ch.lo < ch.hi);
      CHECK(ch.P == ch.P2 - ch.P1);
      CHECK(ch.P >= 1);
      CHECK(ch.doubled == ((ch.P1 % 2 != 0) && (ch.P2 % 2 != 0)));
      if (ch.doubled) {
        CHECK(ch.Rdim % 2 == 0);
        CHECK(ch.Sdim % 2 == 0);
      }
      // Rdim/Sdim equals the band width exactly.
      CHECK(Fraction(ch.Rdim, ch.Sdim) == ch.hi - ch.lo);
      CHECK(ch.rowOffset == total);
      total += ch.rowCount;
      CHECK(ch.m == checked_gcd(ch.rowCount, plan.S));
    }
    CHECK(total == plan.S);
    CHECK(edge == Fraction::of(1));
  }
}
