// Command-line front end: plans rational filter banks, constructs and checks
// ideal modulation matrices, designs paraunitary polyphase matrices by
// stopband-energy minimization, and applies designed banks to signals.
//
// Commands write their artifacts into --out-dir:
//   plan     plan.json
//   imm      imm_ch<n>_{neg,pos}.json (minimal dimensions per channel)
//   design   plan.json, imm_ch<n>_{neg,pos}.json (bank scale), specs.json,
//            theta.json, polyphase.json, trace.csv, channel_<n>_coeffs.csv,
//            design_config.txt
//   eval     response_ch<n>_d<d>.csv for every characterizing filter
//   verify   verify.json (one entry per invariant check)
//   process  subband_ch<n>.<ext>, recon.<ext>, process.json

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rfb/errors.hpp"
#include "rfb/io.hpp"
#include "rfb/parallel.hpp"

namespace fs = std::filesystem;
using namespace rfb;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDbFloor = -120.0;

struct CommonOpts {
  std::string partition;
  std::string epsilonPi = "1/20";
  int stages = 7;
  int gridSize = 0;  // 0: per-command default
  int restarts = 8;
  int maxIter = 200;
  std::uint64_t seed = 1;
  std::string outDir = ".";
  std::string input;
  std::string format = "csv";
  std::string configPath;
};

SignalFormat parse_format(const std::string& f) {
  if (f == "csv") return SignalFormat::Csv;
  if (f == "f64") return SignalFormat::F64;
  throw ParseError("unknown signal format '" + f + "' (expected csv or f64)");
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

DesignConfig resolve_config(const CommonOpts& opts, int defaultGrid) {
  DesignConfig config;
  if (!opts.configPath.empty()) {
    std::ifstream in(opts.configPath);
    if (!in) throw IoError("cannot read config " + opts.configPath);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    config = parse_design_config(body);
  }
  if (!opts.partition.empty()) config.partition = parse_partition(opts.partition);
  if (config.partition.empty()) throw ParseError("no partition given (use --partition or --config)");
  if (opts.configPath.empty()) {
    config.epsilon = parse_fraction(opts.epsilonPi);
    config.stages = opts.stages;
    config.restarts = opts.restarts;
    config.maxIter = opts.maxIter;
    config.seed = opts.seed;
    config.gridSize = (opts.gridSize > 0) ? opts.gridSize : defaultGrid;
  } else if (opts.gridSize > 0) {
    config.gridSize = opts.gridSize;
  }
  if (config.gridSize % 2 != 0) throw ParseError("grid size must be even");
  return config;
}

double to_db(double amplitude) {
  if (amplitude <= 0.0) return kDbFloor;
  return std::max(kDbFloor, 20.0 * std::log10(amplitude));
}

int cmd_plan(const CommonOpts& opts) {
  DesignConfig config = resolve_config(opts, 1024);
  BankPlan plan = plan_bank(config.partition);
  ensure_out_dir(opts.outDir);
  write_json_file(join(opts.outDir, "plan.json"), plan_to_json(plan));
  std::cout << "plan: S=" << plan.S << " rows=(";
  for (std::size_t i = 0; i < plan.rowCounts.size(); ++i) {
    std::cout << (i ? "," : "") << plan.rowCounts[i];
  }
  std::cout << ") residues=(";
  for (std::size_t i = 0; i < plan.residueCounts.size(); ++i) {
    std::cout << (i ? "," : "") << plan.residueCounts[i];
  }
  std::cout << ")\n";
  return kExitOk;
}

int cmd_imm(const CommonOpts& opts) {
  DesignConfig config = resolve_config(opts, 1024);
  BankPlan plan = plan_bank(config.partition);
  ensure_out_dir(opts.outDir);
  for (std::size_t n = 0; n < plan.channels.size(); ++n) {
    const ChannelPlan& ch = plan.channels[n];
    BandMapping map = minimal_mapping(ch);
    ImmPair pair = build_imm_pair(map);
    MappingCheck check = verify_mapping(pair.neg, pair.pos, map, 16 * map.Q);
    if (!check.ok) {
      std::cerr << "channel " << n << ": " << check.message << "\n";
      return kExitOracleFailure;
    }
    write_json_file(join(opts.outDir, "imm_ch" + std::to_string(n) + "_neg.json"),
                    imm_to_json(pair.neg));
    write_json_file(join(opts.outDir, "imm_ch" + std::to_string(n) + "_pos.json"),
                    imm_to_json(pair.pos));
  }
  std::cout << "imm: " << plan.channels.size() << " channel pair(s) verified\n";
  return kExitOk;
}

void write_design_artifacts(const std::string& outDir, const DesignConfig& config,
                            const DesignProblem& prob, const OptimizeResult& result,
                            const PolyphaseFir& fir) {
  write_json_file(join(outDir, "plan.json"), plan_to_json(prob.plan));
  for (std::size_t n = 0; n < prob.imms.size(); ++n) {
    write_json_file(join(outDir, "imm_ch" + std::to_string(n) + "_neg.json"),
                    imm_to_json(prob.imms[n].neg));
    write_json_file(join(outDir, "imm_ch" + std::to_string(n) + "_pos.json"),
                    imm_to_json(prob.imms[n].pos));
  }
  Json specs = Json::array();
  for (const auto& chSpecs : prob.specs) {
    for (const CharFilterSpec& s : chSpecs) specs.push_back(spec_to_json(s));
  }
  write_json_file(join(outDir, "specs.json"), specs);
  write_json_file(join(outDir, "theta.json"), theta_to_json(result.theta));
  write_json_file(join(outDir, "polyphase.json"), fir_to_json(fir));
  write_text_file(join(outDir, "trace.csv"), trace_to_csv(result.trace));
  for (std::size_t n = 0; n < prob.plan.channels.size(); ++n) {
    write_text_file(join(outDir, "channel_" + std::to_string(n) + "_coeffs.csv"),
                    channel_coeffs_to_csv(fir, prob.plan.channels[n]));
  }
  write_text_file(join(outDir, "design_config.txt"), design_config_to_text(config));
}

int cmd_design(const CommonOpts& opts) {
  DesignConfig config = resolve_config(opts, 1024);
  DesignProblem prob = build_design_problem(config.partition, config.epsilon, config.stages,
                                            config.gridSize, config.seed);
  OptimizeOptions oo;
  oo.restarts = config.restarts;
  oo.maxIter = config.maxIter;
  OptimizeResult result = optimize(prob, oo);
  PolyphaseFir fir = synthesize(result.theta);

  ensure_out_dir(opts.outDir);
  write_design_artifacts(opts.outDir, config, prob, result, fir);

  std::cout << "design: D=" << result.value << " (best start " << result.bestInitialValue
            << "), " << (result.converged ? "converged" : "iteration cap reached") << "\n";
  return result.converged ? kExitOk : kExitNotConverged;
}

// Reads a previous design from outDir.
struct LoadedDesign {
  DesignConfig config;
  DesignProblem prob;
  ThetaVector theta;
  PolyphaseFir fir;
};

LoadedDesign load_design(const std::string& dir, int gridOverride) {
  std::ifstream in(join(dir, "design_config.txt"));
  if (!in) throw IoError("no design_config.txt in " + dir + " (run design first)");
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  LoadedDesign d;
  d.config = parse_design_config(body);
  if (gridOverride > 0) d.config.gridSize = gridOverride;
  d.prob = build_design_problem(d.config.partition, d.config.epsilon, d.config.stages,
                                d.config.gridSize, d.config.seed);
  d.theta = theta_from_json(read_json_file(join(dir, "theta.json")));
  d.fir = synthesize(d.theta);
  return d;
}

int cmd_eval(const CommonOpts& opts) {
  LoadedDesign d = load_design(opts.outDir, opts.gridSize > 0 ? opts.gridSize : 4096);
  const DesignProblem& prob = d.prob;
  FrequencyGrid grid(prob.gridSize);
  auto responses = filter_responses(d.fir, prob);

  std::vector<double> omega(static_cast<std::size_t>(grid.count));
  for (int i = 0; i < grid.count; ++i) omega[i] = grid.omega(i) / kPi;

  for (std::size_t f = 0; f < prob.tasks.size(); ++f) {
    const auto& task = prob.tasks[f];
    const CharFilterSpec& spec = prob.specs[task.channel][task.d];
    // Magnitudes relative to the channel's ideal level sqrt(K_n/S).
    double ideal = std::sqrt(static_cast<double>(task.mt.P) / static_cast<double>(task.mt.Q));
    std::vector<double> mag(omega.size()), overlay(omega.size());
    for (int i = 0; i < grid.count; ++i) {
      mag[i] = to_db(std::abs(responses[f][i]) / ideal);
      Fraction phi(2 * i - grid.count, grid.count);
      overlay[i] = spec.idealPass.contains(phi) ? 0.0 : -60.0;
    }
    std::string name = "response_ch" + std::to_string(task.channel) + "_d" +
                       std::to_string(task.d) + ".csv";
    write_text_file(join(opts.outDir, name), response_to_csv(omega, mag, overlay));
  }
  std::cout << "eval: " << prob.tasks.size() << " response file(s) on a " << prob.gridSize
            << "-point grid\n";
  return kExitOk;
}

struct VerifyCheck {
  std::string name;
  bool pass;
  double measured;
  double threshold;
};

int cmd_verify(const CommonOpts& opts) {
  DesignConfig config = resolve_config(opts, 4096);
  DesignProblem prob = build_design_problem(config.partition, config.epsilon, config.stages,
                                            config.gridSize, config.seed);

  // Use the designed angles when present, otherwise a zero-stage identity.
  ThetaVector theta;
  std::string thetaPath = join(opts.outDir, "theta.json");
  if (fs::exists(thetaPath)) {
    theta = theta_from_json(read_json_file(thetaPath));
    if (theta.N != prob.matrix_size()) throw ParseError("theta.json does not match the partition");
    prob.K = theta.K;
    prob.finalize();
  } else {
    theta.N = prob.matrix_size();
    theta.K = 0;
    theta.angles.assign(ThetaVector::expected_size(theta.N, 0), 0.0);
    prob.K = 0;
    prob.finalize();
  }
  PolyphaseFir fir = synthesize(theta);

  std::vector<VerifyCheck> checks;
  auto add = [&](const std::string& name, double measured, double threshold) {
    checks.push_back({name, measured <= threshold, measured, threshold});
  };

  // Mapping oracle over all channels at bank scale (already enforced during
  // problem construction; re-run to report).
  double oracleFailures = 0.0;
  for (std::size_t n = 0; n < prob.plan.channels.size(); ++n) {
    BandMapping map = banked_mapping(prob.plan.channels[n], prob.plan.S);
    const ImmPair& pair = prob.imms[n];
    if (!verify_mapping(pair.neg, pair.pos, map, 16 * prob.plan.S).ok) oracleFailures += 1.0;
  }
  add("mapping_oracle_failures", oracleFailures, 0.0);

  add("paraunitarity_tap_error", paraunitarity_error(fir), 1e-12);

  FrequencyGrid grid(prob.gridSize);
  FreqSamples samples = eval_freq(fir, grid);
  double unit = 0.0;
  for (int g = 0; g < grid.count; ++g) {
    for (int r = 0; r < fir.N; ++r) {
      for (int c = 0; c < fir.N; ++c) {
        std::complex<double> acc(0.0, 0.0);
        for (int j = 0; j < fir.N; ++j) {
          acc += samples.at(g, r, j) * std::conj(samples.at(g, c, j));
        }
        double target = (r == c) ? 1.0 : 0.0;
        unit = std::max(unit, std::abs(acc - std::complex<double>(target, 0.0)));
      }
    }
  }
  add("unitarity_on_circle", unit, 1e-10);

  // Row power sums: constant K_n/S per channel.
  double powerDev = 0.0;
  Json powerConstants = Json::array();
  for (std::size_t n = 0; n < prob.plan.channels.size(); ++n) {
    const ChannelPlan& ch = prob.plan.channels[n];
    ModulationTransform mt = modulation_transform(ch.rowCount, prob.plan.S);
    auto power = modulation_row_power(samples, static_cast<int>(ch.rowOffset), mt, grid);
    double expected = static_cast<double>(ch.rowCount) / static_cast<double>(prob.plan.S);
    for (double v : power) powerDev = std::max(powerDev, std::abs(v - expected) / expected);
    powerConstants.push_back(expected);
  }
  add("power_complementarity_rel_dev", powerDev, 1e-8);

  // Shift identity: every modulation element equals its class filter at the
  // shifted argument.
  double shiftErr = 0.0;
  {
    FrequencyGrid sgrid(256);
    std::vector<double> phis(256);
    for (int i = 0; i < 256; ++i) phis[i] = sgrid.omega(i);
    for (std::size_t n = 0; n < prob.plan.channels.size(); ++n) {
      const ChannelPlan& ch = prob.plan.channels[n];
      ModulationTransform mt = modulation_transform(ch.rowCount, prob.plan.S);
      ResidueStructure rs = residue_structure(ch.rowCount, prob.plan.S);
      for (std::int64_t d = 0; d < rs.m; ++d) {
        const ElementIndex rep = rs.representatives[d];
        for (const ElementIndex& e : rs.classes[d]) {
          std::int64_t g = modulation_shift(rep, e, rs);
          std::vector<double> shifted(phis);
          for (double& x : shifted) x -= 2.0 * kPi * static_cast<double>(g) / static_cast<double>(mt.mpq);
          auto lhs = channel_modulation_response_at(fir, static_cast<int>(ch.rowOffset), mt, e, phis);
          auto rhs = channel_modulation_response_at(fir, static_cast<int>(ch.rowOffset), mt, rep, shifted);
          for (std::size_t i = 0; i < phis.size(); ++i) {
            shiftErr = std::max(shiftErr, std::abs(lhs[i] - rhs[i]));
          }
        }
      }
    }
  }
  add("modulation_shift_identity", shiftErr, 1e-9);

  // Perfect reconstruction and energy conservation on a seeded random signal.
  {
    SeededUniform rng(config.seed + 17);
    SignalBuffer x;
    x.samples.resize(static_cast<std::size_t>(prob.plan.S) * 40);
    for (double& v : x.samples) v = 2.0 * rng.next() - 1.0;
    SubbandSet sb = analyze(fir, prob.plan, x);
    SignalBuffer xr = synthesize_signal(fir, prob.plan, sb);
    std::size_t delay = static_cast<std::size_t>(fir.order) * prob.plan.S;
    double prErr = 0.0;
    for (std::size_t i = 0; i < xr.samples.size(); ++i) {
      double ref = (i >= delay && i - delay < x.samples.size()) ? x.samples[i - delay] : 0.0;
      prErr = std::max(prErr, std::abs(xr.samples[i] - ref));
    }
    add("perfect_reconstruction", prErr, 1e-9);

    double ex = signal_energy(x.samples);
    add("energy_conservation_rel", std::abs(subband_energy(sb) - ex) / ex, 1e-9);

    double si = 0.0;
    for (std::size_t n = 0; n < prob.plan.channels.size(); ++n) {
      si = std::max(si, shift_invariance_check(fir, prob.plan, x, static_cast<int>(n)));
    }
    add("shift_invariance", si, 1e-10);
  }

  double dValue = objective(theta, prob);

  bool allPass = true;
  Json report;
  Json checkList = Json::array();
  for (const VerifyCheck& c : checks) {
    allPass = allPass && c.pass;
    checkList.push_back(Json{{"name", c.name},
                             {"pass", c.pass},
                             {"measured", c.measured},
                             {"threshold", c.threshold}});
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " measured=" << c.measured
              << " threshold=" << c.threshold << "\n";
  }
  report["checks"] = checkList;
  report["objective"] = dValue;
  report["powerConstants"] = powerConstants;
  report["allPass"] = allPass;
  ensure_out_dir(opts.outDir);
  write_json_file(join(opts.outDir, "verify.json"), report);
  std::cout << "objective D = " << dValue << "\n";
  return allPass ? kExitOk : kExitOracleFailure;
}

int cmd_process(const CommonOpts& opts) {
  if (opts.input.empty()) throw ParseError("process needs --input <signal file>");
  SignalFormat format = parse_format(opts.format);
  LoadedDesign d = load_design(opts.outDir, 0);

  SignalBuffer x;
  x.samples = read_signal(opts.input, format);
  if (x.samples.empty()) throw ParseError("input signal is empty");

  SubbandSet sb = analyze(d.fir, d.prob.plan, x);
  SignalBuffer xr = synthesize_signal(d.fir, d.prob.plan, sb);

  const char* ext = (format == SignalFormat::Csv) ? ".csv" : ".f64";
  Json energies = Json::array();
  for (std::size_t n = 0; n < sb.channels.size(); ++n) {
    std::vector<double> stream = interleave_channel(sb, static_cast<int>(n));
    write_signal(join(opts.outDir, "subband_ch" + std::to_string(n) + ext), stream, format);
    energies.push_back(signal_energy(stream));
  }
  write_signal(join(opts.outDir, std::string("recon") + ext), xr.samples, format);

  std::size_t delay = static_cast<std::size_t>(d.fir.order) * d.prob.plan.S;
  double prErr = 0.0;
  for (std::size_t i = 0; i < xr.samples.size(); ++i) {
    double ref = (i >= delay && i - delay < x.samples.size()) ? x.samples[i - delay] : 0.0;
    prErr = std::max(prErr, std::abs(xr.samples[i] - ref));
  }

  Json report{{"inputLength", x.samples.size()},
              {"paddedBlocks", sb.blocks},
              {"reconstructionDelay", delay},
              {"reconstructionError", prErr},
              {"channelEnergies", energies}};
  write_json_file(join(opts.outDir, "process.json"), report);
  std::cout << "process: reconstruction error " << prErr << " at delay " << delay << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational filter bank design toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* cmd, bool needsPartition) {
    cmd->add_option("--partition", opts.partition,
                    "comma-separated band fractions, e.g. 2/5,1/5,2/5");
    cmd->add_option("--config", opts.configPath, "key=value design config file");
    cmd->add_option("--epsilon-pi", opts.epsilonPi, "transition bandwidth as a fraction of pi");
    cmd->add_option("--stages", opts.stages, "degree-one stages K");
    cmd->add_option("--grid", opts.gridSize, "frequency grid size (even)");
    cmd->add_option("--restarts", opts.restarts, "optimizer restarts");
    cmd->add_option("--max-iter", opts.maxIter, "iteration cap per restart");
    cmd->add_option("--seed", opts.seed, "random seed");
    cmd->add_option("--out-dir", opts.outDir, "artifact directory");
    cmd->add_option("--input", opts.input, "input path");
    cmd->add_option("--format", opts.format, "signal format: csv or f64");
    (void)needsPartition;
  };

  CLI::App* plan = app.add_subcommand("plan", "compute bank dimensions");
  CLI::App* imm = app.add_subcommand("imm", "construct and check ideal modulation matrices");
  CLI::App* design = app.add_subcommand("design", "optimize a paraunitary polyphase matrix");
  CLI::App* eval = app.add_subcommand("eval", "export filter magnitude responses");
  CLI::App* verify = app.add_subcommand("verify", "run invariant checks and write a report");
  CLI::App* process = app.add_subcommand("process", "analyze/reconstruct a signal");
  for (CLI::App* cmd : {plan, imm, design, eval, verify, process}) add_common(cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParseError;
  }

  try {
    if (plan->parsed()) return cmd_plan(opts);
    if (imm->parsed()) return cmd_imm(opts);
    if (design->parsed()) return cmd_design(opts);
    if (eval->parsed()) return cmd_eval(opts);
    if (verify->parsed()) return cmd_verify(opts);
    if (process->parsed()) return cmd_process(opts);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const InvalidPartition& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidPartition;
  } catch (const OverflowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidPartition;
  } catch (const OracleFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOracleFailure;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }
  return kExitOk;
}
