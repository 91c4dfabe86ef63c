#include "rfb/modulation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rfb/fraction.hpp"
#include "rfb/parallel.hpp"

namespace rfb {

namespace {

constexpr double kPi = std::numbers::pi;

// exp(-j*2*pi*x/mpq), the global DFT root raised to x.
std::complex<double> root_power(std::int64_t x, std::int64_t mpq) {
  return std::polar(1.0, -2.0 * kPi * static_cast<double>(pos_mod(x, mpq)) /
                             static_cast<double>(mpq));
}

struct ElementWeights {
  // Column and row factors of the double sum: the constant DFT parts
  // depend only on the element (l, k).
  std::vector<std::complex<double>> col;  // size q*m: W^{k*p*s}
  std::vector<std::complex<double>> row;  // size p*m: W^{-l*q*r}
};

ElementWeights element_weights(const ModulationTransform& mt, const ElementIndex& rep) {
  ElementWeights w;
  std::int64_t mp = mt.P;
  std::int64_t mq = mt.Q;
  w.col.resize(mq);
  w.row.resize(mp);
  for (std::int64_t s = 0; s < mq; ++s) {
    w.col[s] = root_power(rep.second * mt.p * s, mt.mpq);
  }
  for (std::int64_t r = 0; r < mp; ++r) {
    w.row[r] = root_power(-rep.first * mt.q * r, mt.mpq);
  }
  return w;
}

// One response value from a P x Q sample block at filter argument phi.
std::complex<double> element_response(const std::complex<double>* block, int blockCols,
                                      const ModulationTransform& mt,
                                      const ElementWeights& w, double phi) {
  std::int64_t mp = mt.P;
  std::int64_t mq = mt.Q;
  const std::complex<double> stepCol = std::polar(1.0, phi * static_cast<double>(mt.p));
  const std::complex<double> stepRow = std::polar(1.0, -phi * static_cast<double>(mt.q));
  std::complex<double> acc(0.0, 0.0);
  std::complex<double> rowPhase(1.0, 0.0);
  for (std::int64_t r = 0; r < mp; ++r) {
    const std::complex<double>* line = block + r * blockCols;
    std::complex<double> colPhase(1.0, 0.0);
    std::complex<double> inner(0.0, 0.0);
    for (std::int64_t s = 0; s < mq; ++s) {
      inner += colPhase * w.col[s] * line[s];
      colPhase *= stepCol;
    }
    acc += rowPhase * w.row[r] * inner;
    rowPhase *= stepRow;
  }
  return acc / static_cast<double>(mq);
}

}  // namespace

ModulationTransform modulation_transform(std::int64_t P, std::int64_t Q) {
  ModulationTransform mt;
  mt.P = P;
  mt.Q = Q;
  mt.m = checked_gcd(P, Q);
  mt.p = P / mt.m;
  mt.q = Q / mt.m;
  mt.mpq = checked_lcm(P, Q);
  return mt;
}

std::int64_t master_sample_index(std::int64_t i, std::int64_t mpq, std::int64_t gridCount) {
  if (mpq % 2 == 0 && gridCount % 2 != 0) {
    throw std::invalid_argument("frequency grid must be even for this block");
  }
  std::int64_t j = pos_mod(mpq * i, gridCount);
  if (mpq % 2 == 0) j = pos_mod(j + gridCount / 2, gridCount);
  return j;
}

std::vector<std::complex<double>> channel_modulation_response_shifted(
    const FreqSamples& samples, int rowOffset, const ModulationTransform& mt,
    const ElementIndex& rep, const FrequencyGrid& grid, std::int64_t g) {
  if (rowOffset + mt.P > samples.rows || mt.Q != samples.cols) {
    throw std::invalid_argument("sample block does not match the modulation transform");
  }
  ElementWeights w = element_weights(mt, rep);
  const double shift = 2.0 * kPi * static_cast<double>(g) / static_cast<double>(mt.mpq);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(grid.count));
  const std::size_t nn = static_cast<std::size_t>(samples.rows) * samples.cols;
  for (int i = 0; i < grid.count; ++i) {
    std::int64_t j = master_sample_index(i, mt.mpq, grid.count);
    const std::complex<double>* block =
        samples.v.data() + static_cast<std::size_t>(j) * nn + static_cast<std::size_t>(rowOffset) * samples.cols;
    out[i] = element_response(block, samples.cols, mt, w, grid.omega(i) - shift);
  }
  return out;
}

std::vector<std::complex<double>> channel_modulation_response(
    const FreqSamples& samples, int rowOffset, const ModulationTransform& mt,
    const ElementIndex& rep, const FrequencyGrid& grid) {
  return channel_modulation_response_shifted(samples, rowOffset, mt, rep, grid, 0);
}

std::vector<std::complex<double>> channel_modulation_response_at(
    const PolyphaseFir& fir, int rowOffset, const ModulationTransform& mt,
    const ElementIndex& rep, const std::vector<double>& phis) {
  if (rowOffset + mt.P > fir.N || mt.Q != fir.N) {
    throw std::invalid_argument("FIR matrix does not match the modulation transform");
  }
  ElementWeights w = element_weights(mt, rep);
  std::vector<std::complex<double>> out(phis.size());
  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(fir.N) * fir.N);
  for (std::size_t i = 0; i < phis.size(); ++i) {
    double phi = phis[i];
    eval_at(fir, static_cast<double>(mt.mpq) * phi, scratch.data());
    const std::complex<double>* block =
        scratch.data() + static_cast<std::size_t>(rowOffset) * fir.N;
    out[i] = element_response(block, fir.N, mt, w, phi);
  }
  return out;
}

std::vector<double> modulation_row_power(const FreqSamples& samples, int rowOffset,
                                         const ModulationTransform& mt,
                                         const FrequencyGrid& grid) {
  std::vector<double> power(static_cast<std::size_t>(grid.count), 0.0);
  for (std::int64_t k = 0; k < mt.Q; ++k) {
    auto resp = channel_modulation_response(samples, rowOffset, mt, {0, k}, grid);
    for (int i = 0; i < grid.count; ++i) power[i] += std::norm(resp[i]);
  }
  return power;
}

}  // namespace rfb
