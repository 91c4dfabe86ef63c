#include "rfb/spectrum.hpp"

#include <algorithm>

#include "rfb/errors.hpp"

namespace rfb {

namespace {

const Fraction kMinusOne(-1, 1);
const Fraction kOne(1, 1);
const Fraction kTwo(2, 1);

// Splits one raw interval into in-window pieces.
void append_wrapped(std::vector<Interval>& out, Fraction lo, Fraction hi) {
  if (!(lo < hi)) return;
  if (kTwo <= hi - lo) {
    out.push_back({kMinusOne, kOne});
    return;
  }
  // Shift lo into [-1, 1); hi keeps the same offset.
  Fraction shift = lo - wrap_unit(lo);
  lo = lo - shift;
  hi = hi - shift;
  if (hi <= kOne) {
    out.push_back({lo, hi});
  } else {
    out.push_back({lo, kOne});
    out.push_back({kMinusOne, hi - kTwo});
  }
}

std::vector<Interval> merge_sorted(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const Interval& p : parts) {
    if (!(p.lo < p.hi)) continue;
    if (!merged.empty() && p.lo <= merged.back().hi) {
      if (merged.back().hi < p.hi) merged.back().hi = p.hi;
    } else {
      merged.push_back(p);
    }
  }
  return merged;
}

}  // namespace

bool SpectrumMask::contains(const Fraction& x) const {
  for (const Interval& iv : intervals) {
    if (iv.lo <= x && x < iv.hi) return true;
  }
  return false;
}

Fraction SpectrumMask::measure() const {
  Fraction total = Fraction::of(0);
  for (const Interval& iv : intervals) total = total + (iv.hi - iv.lo);
  return total;
}

bool SpectrumMask::operator==(const SpectrumMask& o) const {
  if (intervals.size() != o.intervals.size()) return false;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].lo != o.intervals[i].lo || intervals[i].hi != o.intervals[i].hi) {
      return false;
    }
  }
  return true;
}

SpectrumMask make_mask(const std::vector<Interval>& raw) {
  std::vector<Interval> parts;
  for (const Interval& iv : raw) append_wrapped(parts, iv.lo, iv.hi);
  SpectrumMask mask;
  mask.intervals = merge_sorted(std::move(parts));
  return mask;
}

SpectrumMask full_mask() {
  SpectrumMask mask;
  mask.intervals.push_back({kMinusOne, kOne});
  return mask;
}

SpectrumMask complement(const SpectrumMask& mask) {
  SpectrumMask out;
  Fraction cursor = kMinusOne;
  for (const Interval& iv : mask.intervals) {
    if (cursor < iv.lo) out.intervals.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < kOne) out.intervals.push_back({cursor, kOne});
  return out;
}

SpectrumMask mask_union(const SpectrumMask& a, const SpectrumMask& b) {
  std::vector<Interval> parts = a.intervals;
  parts.insert(parts.end(), b.intervals.begin(), b.intervals.end());
  SpectrumMask mask;
  mask.intervals = merge_sorted(std::move(parts));
  return mask;
}

SpectrumMask dilate(const SpectrumMask& mask, const Fraction& eps) {
  if (eps.num < 0) throw ParseError("negative dilation");
  if (eps.num == 0) return mask;
  std::vector<Interval> parts;
  for (const Interval& iv : mask.intervals) {
    append_wrapped(parts, iv.lo - eps, iv.hi + eps);
  }
  SpectrumMask out;
  out.intervals = merge_sorted(std::move(parts));
  // Wrapped dilations may produce pieces that touch across the -1/+1 seam;
  // merge_sorted already joined everything inside the window, and seam
  // adjacency only matters for membership, which stays correct either way.
  return out;
}

std::string to_string(const SpectrumMask& mask) {
  std::string s = "{";
  for (std::size_t i = 0; i < mask.intervals.size(); ++i) {
    if (i > 0) s += ", ";
    s += "[" + to_string(mask.intervals[i].lo) + ", " + to_string(mask.intervals[i].hi) + ")";
  }
  s += "}";
  return s;
}

}  // namespace rfb
