#ifndef RFB_RUNTIME_HPP
#define RFB_RUNTIME_HPP

#include <cstdint>
#include <vector>

#include "rfb/band_plan.hpp"
#include "rfb/paraunitary.hpp"

namespace rfb {

struct SignalBuffer {
  std::vector<double> samples;
  std::size_t length() const { return samples.size(); }
};

// Analysis output: channel n holds rowCounts[n] phase sequences of equal
// length (`blocks` samples each). Phase r of channel n is output phase
// rowOffset_n + r of the stacked polyphase product.
struct SubbandSet {
  std::vector<std::vector<std::vector<double>>> channels;  // [ch][row][t]
  std::int64_t blocks = 0;
  std::size_t inputLength = 0;  // pre-padding length, for reporting
};

// Blocks x into S phases (x_i(t) = x(tS + i), zero-padded to whole blocks),
// applies the FIR matrix, and splits the S output phases by channel. The
// output keeps the full convolution tail (blocks = ceil(len/S) + K).
SubbandSet analyze(const PolyphaseFir& fir, const BankPlan& plan, const SignalBuffer& x);

// Adjoint synthesis, causalized by K blocks: for sb = analyze(x) the result
// reproduces x delayed by K*S samples.
SignalBuffer synthesize_signal(const PolyphaseFir& fir, const BankPlan& plan,
                               const SubbandSet& sb);

// Interleaves channel n's phases into a single stream at the channel rate:
// out[t*rowCount + r] = phase_r[t].
std::vector<double> interleave_channel(const SubbandSet& sb, int channel);

// Max deviation between (a) the interleaved channel output for x delayed by
// S samples and (b) the channel output of x delayed by rowCount_n samples in
// the channel stream. Structurally zero for any FIR matrix.
double shift_invariance_check(const PolyphaseFir& fir, const BankPlan& plan,
                              const SignalBuffer& x, int channel);

double signal_energy(const std::vector<double>& v);
double subband_energy(const SubbandSet& sb);

}  // namespace rfb

#endif  // RFB_RUNTIME_HPP
