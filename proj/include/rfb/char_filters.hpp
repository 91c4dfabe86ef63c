#ifndef RFB_CHAR_FILTERS_HPP
#define RFB_CHAR_FILTERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rfb/imm.hpp"
#include "rfb/residue.hpp"
#include "rfb/spectrum.hpp"

namespace rfb {

// One characterizing filter of a channel: residue class d, the concrete
// matrix element chosen as its anchor, the ideal passband implied by the
// channel's ideal matrices, and (once chosen) the stopband.
struct CharFilterSpec {
  int channel = 0;
  std::int64_t d = 0;
  ElementIndex representative{0, 0};
  SpectrumMask idealPass;
  SpectrumMask stopband;
  std::string diagnostic;  // non-empty only when a cross-check had to explain itself
};

// Ideal value of matrix element `elem` over the filter-argument circle,
// reconstructed from the active 0/1 matrices: element e with shift g pins the
// anchor on the window [(-2g-1)/mpq, (-2g+1)/mpq) (units of pi), negative
// master half on the left sub-window, positive on the right.
SpectrumMask element_support(const ImmPair& pair, const ResidueStructure& rs,
                             const ElementIndex& elem);

// Closed-form passbands for the two distinguished residues of a construction
// style, plus their anchors. Used as a cross-check of element_support.
struct DistinguishedFilters {
  std::int64_t d1 = 0;
  std::int64_t d2 = 0;
  bool merged = false;  // d1 == d2: a single filter carries the union
  ElementIndex anchor1{0, 0};
  ElementIndex anchor2{0, 0};
  SpectrumMask pass1;
  SpectrumMask pass2;
};
DistinguishedFilters distinguished_filters(const BandMapping& map, ImmStyle style,
                                           const ResidueStructure& rs);

// Builds one CharFilterSpec per residue class. Passbands come from the
// element-support oracle; the closed form is compared against it and a
// mismatch throws OracleFailure. The pair must already verify.
std::vector<CharFilterSpec> ideal_spectra(const BandMapping& map, const ImmPair& pair,
                                          const ResidueStructure& rs, int channelIndex = 0);

// Stopband for a transition bandwidth eps (units of pi, 0 <= eps < 1/4):
// everything outside the passband dilated by eps. An empty passband yields
// the full circle; a proper passband whose complement is eaten by the
// dilation is rejected.
SpectrumMask stopband(const CharFilterSpec& spec, const Fraction& eps);

}  // namespace rfb

#endif  // RFB_CHAR_FILTERS_HPP
