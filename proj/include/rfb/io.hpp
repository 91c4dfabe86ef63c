#ifndef RFB_IO_HPP
#define RFB_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "rfb/band_plan.hpp"
#include "rfb/char_filters.hpp"
#include "rfb/imm.hpp"
#include "rfb/objective.hpp"
#include "rfb/optimizer.hpp"
#include "rfb/runtime.hpp"

namespace rfb {

using Json = nlohmann::ordered_json;

enum class SignalFormat { Csv, F64 };

Json plan_to_json(const BankPlan& plan);
BankPlan plan_from_json(const Json& j);

Json imm_to_json(const Imm& imm);
Imm imm_from_json(const Json& j);

Json spec_to_json(const CharFilterSpec& spec);
CharFilterSpec spec_from_json(const Json& j);

Json theta_to_json(const ThetaVector& theta);
ThetaVector theta_from_json(const Json& j);

Json fir_to_json(const PolyphaseFir& fir);
PolyphaseFir fir_from_json(const Json& j);

Json mask_to_json(const SpectrumMask& mask);
SpectrumMask mask_from_json(const Json& j);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& body);

// Single-column CSV (one sample per line) or raw little-endian doubles.
std::vector<double> read_signal(const std::string& path, SignalFormat format);
void write_signal(const std::string& path, const std::vector<double>& samples,
                  SignalFormat format);

std::string trace_to_csv(const OptimizationTrace& trace);

// Per-filter magnitude response: omega in units of pi, magnitude in dB
// relative to the channel's ideal level, an ideal-mask overlay column at
// 0 dB / -60 dB. dB values are floored at -120.
std::string response_to_csv(const std::vector<double>& omegaOverPi,
                            const std::vector<double>& magDb,
                            const std::vector<double>& idealDb);

// Per-channel FIR coefficient table: one line per (phase row, tap).
std::string channel_coeffs_to_csv(const PolyphaseFir& fir, const ChannelPlan& ch);

// Key=value design configuration (fractions, stages, epsilon, grid size,
// restarts, iteration cap, seed). '#' starts a comment.
struct DesignConfig {
  std::vector<Fraction> partition;
  Fraction epsilon{1, 20};  // units of pi
  int stages = 7;
  int gridSize = 1024;
  int restarts = 8;
  int maxIter = 200;
  std::uint64_t seed = 1;
};
DesignConfig parse_design_config(const std::string& body);
std::string design_config_to_text(const DesignConfig& config);

std::vector<Fraction> parse_partition(const std::string& text);

}  // namespace rfb

#endif  // RFB_IO_HPP
