#include "rfb/imm.hpp"

#include <set>

#include "rfb/errors.hpp"

namespace rfb {

namespace {

// Direct closed form for the even-P1 case. The result is the matrix active
// on the negative half circle under Map1.
Imm direct_p1(const BandMapping& map) {
  Imm imm;
  imm.rows = map.P;
  imm.cols = map.Q;
  imm.region = OmegaRegion::NegHalf;
  imm.variant = MappingVariant::Map1;
  imm.ones.resize(map.P);
  std::int64_t half = map.P1 / 2;
  for (std::int64_t l = 0; l < map.P; ++l) {
    std::int64_t k = (2 * l < map.P) ? half + l : map.Q - (half + map.P - l);
    imm.ones[l] = pos_mod(k, map.Q);
  }
  return imm;
}

// Direct closed form for the even-P2 case. The result is the matrix active
// on the negative half circle under Map2: with P1 odd the positive band can
// only land on the negative output half, and for even P1 the same matrix
// equals the row-rotated Map1 construction.
Imm direct_p2(const BandMapping& map) {
  Imm imm;
  imm.rows = map.P;
  imm.cols = map.Q;
  imm.region = OmegaRegion::NegHalf;
  imm.variant = MappingVariant::Map2;
  imm.ones.resize(map.P);
  std::int64_t half = map.P2 / 2;
  for (std::int64_t l = 0; l < map.P; ++l) {
    std::int64_t k = (2 * l < map.P) ? map.Q - (half - l) : (map.P1 - map.P) / 2 + l;
    imm.ones[l] = pos_mod(k, map.Q);
  }
  return imm;
}

Fraction target_input(const Fraction& u, const BandMapping& map, MappingVariant variant) {
  // Inverse of the ideal band map: output frequency u -> input frequency,
  // both in units of pi. Map1 keeps the sign pairing, Map2 is Map1 with the
  // output shifted by pi.
  Fraction P = Fraction::of(map.P);
  Fraction Q = Fraction::of(map.Q);
  Fraction P1 = Fraction::of(map.P1);
  Fraction zero = Fraction::of(0);
  if (variant == MappingVariant::Map1) {
    if (zero < u) return (P * u + P1) / Q;
    return (P * u - P1) / Q;
  }
  if (zero < u) return (P * (u - Fraction::of(1)) - P1) / Q;
  return (P * (u + Fraction::of(1)) + P1) / Q;
}

}  // namespace

BandMapping minimal_mapping(const ChannelPlan& ch) {
  std::int64_t scale = ch.doubled ? 2 : 1;
  return {scale * ch.P1, scale * ch.P2, ch.Rdim, ch.Sdim};
}

BandMapping banked_mapping(const ChannelPlan& ch, std::int64_t S) {
  BandMapping map;
  if (S % ch.lo.den != 0 || S % ch.hi.den != 0) {
    throw InvalidPartition("bank columns not divisible by band-edge denominators");
  }
  map.P1 = checked_mul(ch.lo.num, S / ch.lo.den);
  map.P2 = checked_mul(ch.hi.num, S / ch.hi.den);
  map.P = map.P2 - map.P1;
  map.Q = S;
  if (map.P1 % 2 != 0 && map.P2 % 2 != 0) {
    throw InvalidPartition("bank-scaled band has no even edge; bank columns too coarse");
  }
  return map;
}

ImmPair build_imm_pair(const BandMapping& map, ImmStyle style) {
  bool p1_even = (map.P1 % 2 == 0);
  bool p2_even = (map.P2 % 2 == 0);
  if (style == ImmStyle::Auto) {
    style = p2_even ? ImmStyle::P2Even : ImmStyle::P1Even;
  }
  ImmPair pair;
  pair.style = style;
  if (style == ImmStyle::P1Even) {
    if (!p1_even) throw OracleFailure("P1-even construction requested with odd P1");
    pair.neg = direct_p1(map);
    pair.variant = MappingVariant::Map1;
  } else {
    if (!p2_even) throw OracleFailure("P2-even construction requested with odd P2");
    pair.neg = direct_p2(map);
    pair.variant = MappingVariant::Map2;
  }
  pair.pos = reflect_imm(pair.neg);
  return pair;
}

ImmPair build_imm(const ChannelPlan& ch, ImmStyle style) {
  return build_imm_pair(minimal_mapping(ch), style);
}

Imm build_imm_neg(const ChannelPlan& ch, ImmStyle style) {
  return build_imm(ch, style).neg;
}

Imm reflect_imm(const Imm& imm) {
  Imm out = imm;
  out.region = (imm.region == OmegaRegion::NegHalf) ? OmegaRegion::PosHalf
                                                    : OmegaRegion::NegHalf;
  for (std::int64_t l = 0; l < imm.rows; ++l) {
    std::int64_t src_row = pos_mod(imm.rows - l, imm.rows);
    std::int64_t src_col = imm.ones[src_row];
    // (Q - r) mod Q == src_col  =>  r = (Q - src_col) mod Q
    out.ones[l] = pos_mod(imm.cols - src_col, imm.cols);
  }
  return out;
}

Imm swap_mapping(const Imm& imm) {
  if (imm.rows % 2 != 0) throw OracleFailure("mapping swap needs an even row count");
  Imm out = imm;
  out.variant = (imm.variant == MappingVariant::Map1) ? MappingVariant::Map2
                                                      : MappingVariant::Map1;
  std::int64_t half = imm.rows / 2;
  for (std::int64_t l = 0; l < imm.rows; ++l) {
    out.ones[l] = imm.ones[pos_mod(l + half, imm.rows)];
  }
  return out;
}

ImmPair swap_mapping(const ImmPair& pair) {
  ImmPair out = pair;
  out.neg = swap_mapping(pair.neg);
  out.pos = swap_mapping(pair.pos);
  out.variant = out.neg.variant;
  return out;
}

MappingCheck check_imm_shape(const Imm& imm) {
  if (imm.rows <= 0 || imm.cols <= 0) return {false, "non-positive dimensions"};
  if (static_cast<std::int64_t>(imm.ones.size()) != imm.rows) {
    return {false, "row count does not match entry list"};
  }
  std::set<std::int64_t> used;
  for (std::int64_t l = 0; l < imm.rows; ++l) {
    std::int64_t k = imm.ones[l];
    if (k < 0 || k >= imm.cols) return {false, "entry out of range in row " + std::to_string(l)};
    if (!used.insert(k).second) {
      return {false, "column " + std::to_string(k) + " used twice"};
    }
  }
  return {};
}

MappingCheck verify_mapping(const Imm& neg, const Imm& pos, const BandMapping& map,
                            std::int64_t gridSize) {
  if (gridSize < 16 * map.Q) {
    throw ParseError("mapping oracle grid too coarse; need at least 16*S points");
  }
  for (const Imm* imm : {&neg, &pos}) {
    MappingCheck shape = check_imm_shape(*imm);
    if (!shape.ok) return shape;
    if (imm->rows != map.P || imm->cols != map.Q) {
      return {false, "matrix dimensions do not match the band mapping"};
    }
  }
  if (neg.variant != pos.variant) return {false, "pair mixes mapping variants"};
  MappingVariant variant = neg.variant;

  Fraction R = Fraction::of(map.P);
  Fraction S = Fraction::of(map.Q);

  for (int side = 0; side < 2; ++side) {
    const Imm& active = (side == 0) ? neg : pos;
    for (std::int64_t i = 0; i < gridSize; ++i) {
      // Master variable in (-1, 0) or (0, 1), in units of pi; midpoints keep
      // the sweep away from segment boundaries.
      Fraction t(2 * i + 1, 2 * gridSize);
      if (side == 0) t = t - Fraction::of(1);
      for (std::int64_t l = 0; l < map.P; ++l) {
        std::int64_t k = active.ones[l];
        Fraction u = wrap_unit((t - Fraction::of(2 * l)) / R);
        Fraction w = wrap_unit((t - Fraction::of(2 * k)) / S);
        Fraction expected = wrap_unit(target_input(u, map, variant));
        if (w != expected) {
          return {false,
                  "segment mismatch on the " + std::string(side == 0 ? "negative" : "positive") +
                      " half at master " + to_string(t) + ", row " + std::to_string(l) +
                      ", column " + std::to_string(k) + ": input " + to_string(w) +
                      ", expected " + to_string(expected)};
        }
      }
    }
  }
  return {};
}

}  // namespace rfb
