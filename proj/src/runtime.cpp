#include "rfb/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rfb/parallel.hpp"

namespace rfb {

namespace {

// y[r][t] = sum_tau sum_c taps[tau](r, c) * phases[c][t - tau]
std::vector<std::vector<double>> block_filter(const std::vector<Mat>& taps,
                                              const std::vector<std::vector<double>>& phases,
                                              std::int64_t inBlocks, std::int64_t outBlocks) {
  const int rows = taps.front().rows;
  const int cols = taps.front().cols;
  std::vector<std::vector<double>> out(rows,
                                       std::vector<double>(static_cast<std::size_t>(outBlocks), 0.0));
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (int r = 0; r < rows; ++r) {
    std::vector<double>& line = out[r];
    for (std::size_t tau = 0; tau < taps.size(); ++tau) {
      const Mat& tap = taps[tau];
      for (int c = 0; c < cols; ++c) {
        double w = tap.at(r, c);
        if (w == 0.0) continue;
        const std::vector<double>& in = phases[c];
        std::int64_t tEnd = std::min<std::int64_t>(outBlocks, inBlocks + static_cast<std::int64_t>(tau));
        for (std::int64_t t = static_cast<std::int64_t>(tau); t < tEnd; ++t) {
          line[t] += w * in[t - tau];
        }
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> split_phases(const SignalBuffer& x, std::int64_t S,
                                              std::int64_t blocks) {
  std::vector<std::vector<double>> phases(static_cast<std::size_t>(S),
                                          std::vector<double>(static_cast<std::size_t>(blocks), 0.0));
  for (std::size_t n = 0; n < x.samples.size(); ++n) {
    phases[n % S][n / S] = x.samples[n];
  }
  return phases;
}

}  // namespace

SubbandSet analyze(const PolyphaseFir& fir, const BankPlan& plan, const SignalBuffer& x) {
  const std::int64_t S = plan.S;
  if (fir.N != S) throw std::invalid_argument("bank size does not match the plan");
  if (x.samples.empty()) throw std::invalid_argument("empty input signal");

  const std::int64_t inBlocks = (static_cast<std::int64_t>(x.length()) + S - 1) / S;
  const std::int64_t outBlocks = inBlocks + fir.order;

  std::vector<std::vector<double>> phases = split_phases(x, S, inBlocks);
  std::vector<std::vector<double>> y = block_filter(fir.taps, phases, inBlocks, outBlocks);

  SubbandSet sb;
  sb.blocks = outBlocks;
  sb.inputLength = x.length();
  sb.channels.resize(plan.channels.size());
  for (std::size_t n = 0; n < plan.channels.size(); ++n) {
    const ChannelPlan& ch = plan.channels[n];
    sb.channels[n].assign(y.begin() + ch.rowOffset, y.begin() + ch.rowOffset + ch.rowCount);
  }
  return sb;
}

SignalBuffer synthesize_signal(const PolyphaseFir& fir, const BankPlan& plan,
                               const SubbandSet& sb) {
  const std::int64_t S = plan.S;
  if (fir.N != S) throw std::invalid_argument("bank size does not match the plan");
  if (sb.channels.size() != plan.channels.size()) {
    throw std::invalid_argument("subband set does not match the plan");
  }

  // Reassemble the S phase sequences in stacking order.
  std::vector<std::vector<double>> y;
  y.reserve(static_cast<std::size_t>(S));
  for (std::size_t n = 0; n < sb.channels.size(); ++n) {
    if (static_cast<std::int64_t>(sb.channels[n].size()) != plan.channels[n].rowCount) {
      throw std::invalid_argument("channel phase count does not match the plan");
    }
    for (const auto& row : sb.channels[n]) {
      if (static_cast<std::int64_t>(row.size()) != sb.blocks) {
        throw std::invalid_argument("ragged subband phases");
      }
      y.push_back(row);
    }
  }

  // Causal adjoint: taps D_tau = C_{K - tau}^T.
  std::vector<Mat> adj(fir.taps.size(), Mat(fir.N, fir.N));
  for (std::size_t tau = 0; tau < fir.taps.size(); ++tau) {
    const Mat& src = fir.taps[fir.taps.size() - 1 - tau];
    for (int r = 0; r < fir.N; ++r) {
      for (int c = 0; c < fir.N; ++c) adj[tau].at(r, c) = src.at(c, r);
    }
  }

  const std::int64_t outBlocks = sb.blocks + fir.order;
  std::vector<std::vector<double>> xhat = block_filter(adj, y, sb.blocks, outBlocks);

  SignalBuffer out;
  out.samples.assign(static_cast<std::size_t>(outBlocks * S), 0.0);
  for (std::int64_t t = 0; t < outBlocks; ++t) {
    for (std::int64_t i = 0; i < S; ++i) out.samples[t * S + i] = xhat[i][t];
  }
  return out;
}

std::vector<double> interleave_channel(const SubbandSet& sb, int channel) {
  const auto& phases = sb.channels.at(channel);
  const std::size_t rows = phases.size();
  std::vector<double> out(rows * static_cast<std::size_t>(sb.blocks), 0.0);
  for (std::int64_t t = 0; t < sb.blocks; ++t) {
    for (std::size_t r = 0; r < rows; ++r) out[t * rows + r] = phases[r][t];
  }
  return out;
}

double shift_invariance_check(const PolyphaseFir& fir, const BankPlan& plan,
                              const SignalBuffer& x, int channel) {
  SignalBuffer shifted;
  shifted.samples.assign(static_cast<std::size_t>(plan.S), 0.0);
  shifted.samples.insert(shifted.samples.end(), x.samples.begin(), x.samples.end());

  std::vector<double> base = interleave_channel(analyze(fir, plan, x), channel);
  std::vector<double> moved = interleave_channel(analyze(fir, plan, shifted), channel);

  const std::size_t K = plan.channels.at(channel).rowCount;
  double worst = 0.0;
  for (std::size_t t = 0; t + K < moved.size() && t < base.size(); ++t) {
    worst = std::max(worst, std::abs(moved[t + K] - base[t]));
  }
  return worst;
}

double signal_energy(const std::vector<double>& v) {
  double e = 0.0;
  for (double s : v) e += s * s;
  return e;
}

double subband_energy(const SubbandSet& sb) {
  double e = 0.0;
  for (const auto& ch : sb.channels) {
    for (const auto& row : ch) e += signal_energy(row);
  }
  return e;
}

}  // namespace rfb
