#ifndef RFB_BAND_PLAN_HPP
#define RFB_BAND_PLAN_HPP

#include <cstdint>
#include <vector>

#include "rfb/fraction.hpp"

namespace rfb {

// One channel of the bank. Band edges lo/hi are in units of pi. Q is the lcm
// of the edge denominators; P1/P2 are the edges scaled by Q; the smallest
// modulation matrix for the band is P x Q when P1 or P2 is even and doubles
// to 2P x 2Q when both are odd.
struct ChannelPlan {
  Fraction lo;
  Fraction hi;
  std::int64_t Q = 0;
  std::int64_t P1 = 0;
  std::int64_t P2 = 0;
  std::int64_t P = 0;
  bool doubled = false;
  std::int64_t Rdim = 0;  // rows of the smallest modulation matrix
  std::int64_t Sdim = 0;  // columns of the smallest modulation matrix
  std::int64_t m = 0;     // gcd at bank scale, gcd(rowCount, S); set by plan_bank
  std::int64_t rowOffset = 0;
  std::int64_t rowCount = 0;  // rows of this channel's block in the stacked matrix
};

struct BankPlan {
  std::vector<ChannelPlan> channels;
  std::int64_t S = 0;  // stacked column count = lcm of the channels' Sdim
  std::vector<std::int64_t> rowCounts;
  std::vector<std::int64_t> residueCounts;  // gcd(rowCounts[n], S)
};

// Smallest modulation-matrix dimensions for the band [lo, hi] (units of pi).
// Throws InvalidPartition for lo >= hi or edges outside [0, 1].
struct MappingDims {
  std::int64_t rows;
  std::int64_t cols;
};
MappingDims mapping_dims(const Fraction& lo, const Fraction& hi);

// Builds a ChannelPlan for one band without bank context (rowOffset/rowCount
// refer to the minimal dimensions; m = gcd(Rdim, Sdim)).
ChannelPlan plan_channel(const Fraction& lo, const Fraction& hi);

// Plans the full bank for a partition of [0, pi]. Fractions must lie in
// (0, 1] and sum to exactly 1.
BankPlan plan_bank(const std::vector<Fraction>& fractions);

}  // namespace rfb

#endif  // RFB_BAND_PLAN_HPP
