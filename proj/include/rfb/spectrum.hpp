#ifndef RFB_SPECTRUM_HPP
#define RFB_SPECTRUM_HPP

#include <string>
#include <vector>

#include "rfb/fraction.hpp"

namespace rfb {

// Half-open frequency interval [lo, hi) in units of pi, contained in [-1, 1).
struct Interval {
  Fraction lo;
  Fraction hi;
};

// Finite union of disjoint sorted half-open intervals within [-1, 1).
// Frequencies are exact rationals in units of pi so that masks built from
// band arithmetic stay exact.
struct SpectrumMask {
  std::vector<Interval> intervals;

  bool empty() const { return intervals.empty(); }
  bool contains(const Fraction& x) const;
  Fraction measure() const;  // total width, units of pi

  bool operator==(const SpectrumMask& o) const;
};

// Builds a mask from arbitrary rational intervals: each [lo, hi) is reduced
// modulo 2 into [-1, 1) (splitting at the wrap point), then the pieces are
// sorted and merged. Intervals of width >= 2 cover everything.
SpectrumMask make_mask(const std::vector<Interval>& raw);

SpectrumMask full_mask();

// Set complement within [-1, 1).
SpectrumMask complement(const SpectrumMask& mask);

SpectrumMask mask_union(const SpectrumMask& a, const SpectrumMask& b);

// Widens every interval by eps (units of pi) on both sides, wrapping at the
// +-1 boundary, then re-merges.
SpectrumMask dilate(const SpectrumMask& mask, const Fraction& eps);

std::string to_string(const SpectrumMask& mask);

}  // namespace rfb

#endif  // RFB_SPECTRUM_HPP
