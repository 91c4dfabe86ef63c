#include "rfb/band_plan.hpp"

#include "rfb/errors.hpp"

namespace rfb {

namespace {

void check_edges(const Fraction& lo, const Fraction& hi) {
  if (lo < Fraction::of(0) || hi > Fraction::of(1)) {
    throw InvalidPartition("band edges must lie in [0, 1] (units of pi): [" +
                           to_string(lo) + ", " + to_string(hi) + "]");
  }
  if (!(lo < hi)) {
    throw InvalidPartition("band start must be below band end: [" + to_string(lo) +
                           ", " + to_string(hi) + "]");
  }
}

}  // namespace

ChannelPlan plan_channel(const Fraction& lo, const Fraction& hi) {
  check_edges(lo, hi);
  ChannelPlan ch;
  ch.lo = lo;
  ch.hi = hi;
  ch.Q = checked_lcm(lo.den, hi.den);
  ch.P1 = checked_mul(lo.num, ch.Q / lo.den);
  ch.P2 = checked_mul(hi.num, ch.Q / hi.den);
  ch.P = ch.P2 - ch.P1;
  ch.doubled = (ch.P1 % 2 != 0) && (ch.P2 % 2 != 0);
  std::int64_t scale = ch.doubled ? 2 : 1;
  ch.Rdim = checked_mul(scale, ch.P);
  ch.Sdim = checked_mul(scale, ch.Q);
  ch.m = checked_gcd(ch.Rdim, ch.Sdim);
  ch.rowOffset = 0;
  ch.rowCount = ch.Rdim;
  return ch;
}

MappingDims mapping_dims(const Fraction& lo, const Fraction& hi) {
  ChannelPlan ch = plan_channel(lo, hi);
  return {ch.Rdim, ch.Sdim};
}

BankPlan plan_bank(const std::vector<Fraction>& fractions) {
  if (fractions.empty()) throw InvalidPartition("empty partition");

  Fraction sum = Fraction::of(0);
  for (const Fraction& f : fractions) {
    if (!(Fraction::of(0) < f) || Fraction::of(1) < f) {
      throw InvalidPartition("partition fraction outside (0, 1]: " + to_string(f));
    }
    sum = sum + f;
  }
  if (sum != Fraction::of(1)) {
    throw InvalidPartition("partition does not sum to 1 (got " + to_string(sum) + ")");
  }

  BankPlan plan;
  Fraction edge = Fraction::of(0);
  for (const Fraction& f : fractions) {
    Fraction next = edge + f;
    plan.channels.push_back(plan_channel(edge, next));
    edge = next;
  }

  plan.S = 1;
  for (const ChannelPlan& ch : plan.channels) plan.S = checked_lcm(plan.S, ch.Sdim);

  std::int64_t offset = 0;
  for (ChannelPlan& ch : plan.channels) {
    Fraction width = ch.hi - ch.lo;
    // S is a multiple of every Sdim and Sdim is a multiple of width.den,
    // so the row count is exact.
    ch.rowCount = checked_mul(width.num, plan.S / width.den);
    ch.rowOffset = offset;
    offset = checked_add(offset, ch.rowCount);
    ch.m = checked_gcd(ch.rowCount, plan.S);
    plan.rowCounts.push_back(ch.rowCount);
    plan.residueCounts.push_back(ch.m);
  }
  // Sum of widths is 1, so the stacked matrix is square by construction.
  if (offset != plan.S) {
    throw InvalidPartition("internal: stacked rows do not match column count");
  }
  return plan;
}

}  // namespace rfb
