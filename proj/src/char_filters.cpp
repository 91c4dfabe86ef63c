#include "rfb/char_filters.hpp"

#include "rfb/errors.hpp"

namespace rfb {

namespace {

bool imm_value(const Imm& imm, const ElementIndex& e) {
  return imm.ones[e.first] == e.second;
}

// Anchors of the two distinguished residues: the filters are tied to the
// row-0 elements at columns Phalf and -Phalf, rotated by the shift v so that
// their passbands come out as single contiguous bands.
ElementIndex anchor_plus(std::int64_t Phalf, std::int64_t v, std::int64_t mp, std::int64_t mq) {
  return {pos_mod(-v, mp), pos_mod(Phalf - v, mq)};
}

ElementIndex anchor_minus(std::int64_t Phalf, std::int64_t v, std::int64_t mp, std::int64_t mq) {
  return {pos_mod(v, mp), pos_mod(-Phalf + v, mq)};
}

}  // namespace

SpectrumMask element_support(const ImmPair& pair, const ResidueStructure& rs,
                             const ElementIndex& elem) {
  std::int64_t d = residue_of(elem, rs.m);
  std::vector<Interval> on;
  for (const ElementIndex& e : rs.classes[d]) {
    std::int64_t g = modulation_shift(elem, e, rs);
    Fraction left(-2 * g - 1, rs.mpq);
    Fraction mid(-2 * g, rs.mpq);
    Fraction right(-2 * g + 1, rs.mpq);
    if (imm_value(pair.neg, e)) on.push_back({left, mid});
    if (imm_value(pair.pos, e)) on.push_back({mid, right});
  }
  return make_mask(on);
}

DistinguishedFilters distinguished_filters(const BandMapping& map, ImmStyle style,
                                           const ResidueStructure& rs) {
  if (style == ImmStyle::Auto) {
    style = (map.P2 % 2 == 0) ? ImmStyle::P2Even : ImmStyle::P1Even;
  }
  std::int64_t Phalf;
  if (style == ImmStyle::P1Even) {
    if (map.P1 % 2 != 0) throw OracleFailure("P1-even spectra requested with odd P1");
    Phalf = map.P1 / 2;
  } else {
    if (map.P2 % 2 != 0) throw OracleFailure("P2-even spectra requested with odd P2");
    Phalf = map.P2 / 2;
  }
  std::int64_t mp = rs.m * rs.p;
  std::int64_t mq = rs.m * rs.q;
  std::int64_t v = checked_mul(rs.a, checked_mul(rs.p, Phalf));

  DistinguishedFilters df;
  df.d1 = pos_mod(-Phalf, rs.m);
  df.d2 = pos_mod(Phalf, rs.m);
  df.merged = (df.d1 == df.d2);
  df.anchor1 = anchor_plus(Phalf, v, mp, mq);
  df.anchor2 = anchor_minus(Phalf, v, mp, mq);

  Fraction v2(2 * v, 1);
  Fraction P = Fraction::of(map.P);
  Fraction mpq = Fraction::of(rs.mpq);
  if (style == ImmStyle::P1Even) {
    df.pass1 = make_mask({{(-(v2 + P)) / mpq, (-v2) / mpq}});
    df.pass2 = make_mask({{v2 / mpq, (v2 + P) / mpq}});
  } else {
    df.pass1 = make_mask({{(-v2) / mpq, (-(v2 - P)) / mpq}});
    df.pass2 = make_mask({{(v2 - P) / mpq, v2 / mpq}});
  }
  return df;
}

std::vector<CharFilterSpec> ideal_spectra(const BandMapping& map, const ImmPair& pair,
                                          const ResidueStructure& rs, int channelIndex) {
  DistinguishedFilters df = distinguished_filters(map, pair.style, rs);

  std::vector<CharFilterSpec> specs;
  specs.reserve(rs.m);
  for (std::int64_t d = 0; d < rs.m; ++d) {
    CharFilterSpec spec;
    spec.channel = channelIndex;
    spec.d = d;
    if (d == df.d1 || (!df.merged && d == df.d2)) {
      bool first = (d == df.d1);
      spec.representative = first ? df.anchor1 : df.anchor2;
      SpectrumMask oracle = element_support(pair, rs, spec.representative);
      SpectrumMask closed = df.merged ? mask_union(df.pass1, df.pass2)
                                      : (first ? df.pass1 : df.pass2);
      if (!(oracle == closed)) {
        throw OracleFailure("ideal spectrum mismatch for residue " + std::to_string(d) +
                            ": support oracle " + to_string(oracle) + " vs closed form " +
                            to_string(closed));
      }
      spec.idealPass = oracle;
    } else {
      spec.representative = rs.representatives[d];
      SpectrumMask oracle = element_support(pair, rs, spec.representative);
      if (!oracle.empty()) {
        throw OracleFailure("residue " + std::to_string(d) +
                            " expected an empty ideal spectrum, got " + to_string(oracle));
      }
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

SpectrumMask stopband(const CharFilterSpec& spec, const Fraction& eps) {
  if (eps < Fraction::of(0) || Fraction(1, 4) <= eps) {
    throw ParseError("transition bandwidth must lie in [0, 1/4) (units of pi)");
  }
  if (spec.idealPass.empty()) return full_mask();
  SpectrumMask sb = complement(dilate(spec.idealPass, eps));
  if (sb.empty() && !complement(spec.idealPass).empty()) {
    throw ParseError("transition bandwidth wipes out the stopband");
  }
  return sb;
}

}  // namespace rfb
