#ifndef RFB_MODULATION_HPP
#define RFB_MODULATION_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "rfb/paraunitary.hpp"
#include "rfb/residue.hpp"

namespace rfb {

// Constants of the polyphase -> modulation change of basis for a P x Q
// block. The DFT root convention is W_N = exp(-j*2*pi/N) throughout.
struct ModulationTransform {
  std::int64_t P = 0;
  std::int64_t Q = 0;
  std::int64_t m = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t mpq = 0;  // lcm(P, Q)
};

ModulationTransform modulation_transform(std::int64_t P, std::int64_t Q);

// Grid sample index of the master variable mpq*phi_i reduced mod 2*pi. Needs
// an even grid when mpq is even.
std::int64_t master_sample_index(std::int64_t i, std::int64_t mpq, std::int64_t gridCount);

// Characterizing-filter response: modulation element rep = (l, k) of the
// block at rows [rowOffset, rowOffset + P), sampled over the filter-argument
// grid phi in [-pi, pi). `samples` must hold the full matrix on the same
// grid. Output size == grid.count.
std::vector<std::complex<double>> channel_modulation_response(
    const FreqSamples& samples, int rowOffset, const ModulationTransform& mt,
    const ElementIndex& rep, const FrequencyGrid& grid);

// Same response at arbitrary filter arguments; evaluates the FIR matrix
// directly instead of reusing grid samples.
std::vector<std::complex<double>> channel_modulation_response_at(
    const PolyphaseFir& fir, int rowOffset, const ModulationTransform& mt,
    const ElementIndex& rep, const std::vector<double>& phis);

// Response of `rep` at the shifted arguments phi_i - 2*pi*g/mpq. The master
// argument is unchanged mod 2*pi, so the same grid samples serve.
std::vector<std::complex<double>> channel_modulation_response_shifted(
    const FreqSamples& samples, int rowOffset, const ModulationTransform& mt,
    const ElementIndex& rep, const FrequencyGrid& grid, std::int64_t g);

// Row power sum sum_k |[H_m]_{0,k}(phi_i)|^2 over all Q columns; constant
// P/Q for a paraunitary block.
std::vector<double> modulation_row_power(const FreqSamples& samples, int rowOffset,
                                         const ModulationTransform& mt,
                                         const FrequencyGrid& grid);

}  // namespace rfb

#endif  // RFB_MODULATION_HPP
