#ifndef RFB_IMM_HPP
#define RFB_IMM_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rfb/band_plan.hpp"

namespace rfb {

// Half of the master frequency circle an ideal matrix is active on.
enum class OmegaRegion { NegHalf, PosHalf };

// Map1 sends the positive input band onto the positive output half circle;
// Map2 sends it onto the negative half (the two differ by a pi shift of the
// output spectrum).
enum class MappingVariant { Map1, Map2 };

// Which parity case drives the closed-form construction. Auto picks P2Even
// whenever P2 is even (this is always available for doubled and bank-scaled
// bands) and P1Even otherwise.
enum class ImmStyle { Auto, P1Even, P2Even };

// Ideal modulation matrix: 0/1-valued R x S with exactly one 1 per row and
// at most one per column. ones[l] is the column of row l's entry.
struct Imm {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<std::int64_t> ones;  // size == rows; ones[l] = k
  OmegaRegion region = OmegaRegion::NegHalf;
  MappingVariant variant = MappingVariant::Map1;

  bool operator==(const Imm& o) const {
    return rows == o.rows && cols == o.cols && ones == o.ones &&
           region == o.region && variant == o.variant;
  }
};

struct ImmPair {
  Imm neg;
  Imm pos;
  MappingVariant variant = MappingVariant::Map1;
  ImmStyle style = ImmStyle::P1Even;  // the style actually used
};

// Band mapping in integer form: the band is [P1/Q, P2/Q] in units of pi and
// the matrix dimensions are P x Q (already doubled / bank-scaled as needed).
struct BandMapping {
  std::int64_t P1 = 0;
  std::int64_t P2 = 0;
  std::int64_t P = 0;
  std::int64_t Q = 0;
};

// Minimal-dimension mapping of a channel (doubling applied).
BandMapping minimal_mapping(const ChannelPlan& ch);

// Mapping of a channel's block inside a stacked bank with S columns.
BandMapping banked_mapping(const ChannelPlan& ch, std::int64_t S);

// Builds the active matrices for both halves of the circle. Throws
// OracleFailure if the requested style's parity precondition fails.
ImmPair build_imm_pair(const BandMapping& map, ImmStyle style = ImmStyle::Auto);

// Convenience: pair for a channel at minimal dimensions, (-pi,0) matrix.
ImmPair build_imm(const ChannelPlan& ch, ImmStyle style = ImmStyle::Auto);
Imm build_imm_neg(const ChannelPlan& ch, ImmStyle style = ImmStyle::Auto);

// Point reflection: output (l, r) holds input ((P-l) mod P, (Q-r) mod Q).
// Swaps the active region; an involution.
Imm reflect_imm(const Imm& imm);

// Converts between the two mapping variants by rotating rows by R/2 (mod R).
// Requires an even row count; applying it twice returns the original.
Imm swap_mapping(const Imm& imm);
ImmPair swap_mapping(const ImmPair& pair);

// Brute-force segment oracle. Sweeps the master variable over both half
// circles on a rational grid (gridSize >= 16*S points per half) and checks
// that every selected input segment corresponds to the output segment under
// the pair's mapping variant. Exact rational arithmetic throughout.
struct MappingCheck {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};
MappingCheck verify_mapping(const Imm& neg, const Imm& pos, const BandMapping& map,
                            std::int64_t gridSize);

// Structural validity: row/column constraints and in-range entries.
MappingCheck check_imm_shape(const Imm& imm);

}  // namespace rfb

#endif  // RFB_IMM_HPP
