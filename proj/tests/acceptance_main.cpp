// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier end-to-end checks live here rather than in the unit tests.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rfb/char_filters.hpp"
#include "rfb/errors.hpp"
#include "rfb/io.hpp"
#include "rfb/objective.hpp"
#include "rfb/optimizer.hpp"
#include "rfb/runtime.hpp"
#include "test_support.hpp"

using namespace rfb;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

int count_nonzero_spectra(const std::vector<CharFilterSpec>& specs) {
  int count = 0;
  for (const auto& s : specs) count += s.idealPass.empty() ? 0 : 1;
  return count;
}

std::vector<std::vector<CharFilterSpec>> spectra_for_plan(const BankPlan& plan) {
  std::vector<std::vector<CharFilterSpec>> out;
  for (std::size_t n = 0; n < plan.channels.size(); ++n) {
    BandMapping map = banked_mapping(plan.channels[n], plan.S);
    ImmPair pair = build_imm_pair(map);
    ResidueStructure rs = residue_structure(map.P, map.Q);
    out.push_back(ideal_spectra(map, pair, rs, static_cast<int>(n)));
  }
  return out;
}

// ---- criterion 1: three-band plan reproduction -----------------------------

Outcome criterion1() {
  auto start = std::chrono::steady_clock::now();
  BankPlan plan = plan_bank({Fraction(2, 5), Fraction(1, 5), Fraction(2, 5)});
  bool ok = plan.S == 10;
  ok = ok && plan.rowCounts == std::vector<std::int64_t>{4, 2, 4};
  ok = ok && plan.residueCounts == std::vector<std::int64_t>{2, 2, 2};
  auto spectra = spectra_for_plan(plan);
  for (const auto& specs : spectra) {
    ok = ok && specs.size() == 2;
    ok = ok && count_nonzero_spectra(specs) == 1;
  }
  double elapsed = seconds_since(start);
  ok = ok && elapsed < 1.0;
  return {ok, "S=10 rows=(4,2,4) two filters per channel, one nonzero; " + fmt(elapsed) + "s"};
}

// ---- criterion 2: four-band plan reproduction ------------------------------

Outcome criterion2() {
  BankPlan plan = plan_bank({Fraction(2, 9), Fraction(1, 3), Fraction(1, 3), Fraction(1, 9)});
  bool ok = plan.S == 9;
  ok = ok && plan.residueCounts == std::vector<std::int64_t>{1, 3, 3, 1};
  auto spectra = spectra_for_plan(plan);
  std::vector<int> counts;
  for (const auto& specs : spectra) counts.push_back(count_nonzero_spectra(specs));
  ok = ok && counts == std::vector<int>{1, 2, 2, 1};
  return {ok, "S=9 residues=(1,3,3,1) nonzero spectra=(1,2,2,1)"};
}

// ---- criterion 3: ideal modulation matrix ground truth ---------------------

Outcome criterion3() {
  ImmPair a = build_imm(plan_channel(Fraction(2, 5), Fraction(1, 1)));
  bool ok = a.neg.ones == std::vector<std::int64_t>{1, 2, 3};
  ok = ok && a.pos.ones == std::vector<std::int64_t>{4, 2, 3};

  ImmPair b = build_imm(plan_channel(Fraction(1, 3), Fraction(1, 1)));
  ok = ok && b.neg.rows == 4 && b.neg.cols == 6;
  ok = ok && b.neg.ones == std::vector<std::int64_t>{3, 4, 1, 2};
  ok = ok && b.pos.ones == std::vector<std::int64_t>{3, 4, 5, 2};
  return {ok, "entries match both published pairs exactly"};
}

// ---- criterion 4: mapping oracle over 500 random partitions ----------------

Outcome criterion4() {
  auto start = std::chrono::steady_clock::now();
  SeededUniform rng(987654321);
  int channels = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto partition = rfbtest::random_partition(rng);
    BankPlan plan = plan_bank(partition);
    for (const ChannelPlan& ch : plan.channels) {
      BandMapping map = minimal_mapping(ch);
      ImmPair pair = build_imm_pair(map);
      if (!verify_mapping(pair.neg, pair.pos, map, 16 * map.Q).ok) {
        return {false, "minimal pair failed for band [" + to_string(ch.lo) + "," +
                           to_string(ch.hi) + "]"};
      }
      ++channels;
    }
  }
  double elapsed = seconds_since(start);
  return {elapsed < 60.0, std::to_string(channels) + " channel pairs verified in " +
                              fmt(elapsed) + "s"};
}

// ---- criterion 5: shift identity across four block shapes ------------------

Outcome criterion5() {
  SeededUniform rng(13579);
  const std::vector<std::pair<int, int>> shapes = {{3, 5}, {4, 10}, {3, 9}, {4, 6}};
  FrequencyGrid grid(1024);
  double worst = 0.0;
  int trials = 0;
  for (int t = 0; t < 50; ++t) {
    auto [P, Q] = shapes[t % shapes.size()];
    int K = 1 + static_cast<int>(rng.next() * 3);
    PolyphaseFir fir = rfbtest::random_paraunitary(Q, K, rng);
    FreqSamples samples = eval_freq(fir, grid);
    ModulationTransform mt = modulation_transform(P, Q);
    ResidueStructure rs = residue_structure(P, Q);
    for (std::int64_t d = 0; d < rs.m; ++d) {
      const ElementIndex rep = rs.representatives[d];
      for (const ElementIndex& e : rs.classes[d]) {
        std::int64_t g = modulation_shift(rep, e, rs);
        auto lhs = channel_modulation_response(samples, 0, mt, e, grid);
        auto rhs = channel_modulation_response_shifted(samples, 0, mt, rep, grid, g);
        for (int i = 0; i < grid.count; ++i) {
          worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
        }
      }
    }
    ++trials;
  }
  return {worst < 1e-9,
          std::to_string(trials) + " matrices, max element error " + fmt(worst)};
}

// ---- criterion 6: paraunitarity and perfect reconstruction -----------------

Outcome criterion6() {
  SeededUniform rng(246810);
  ThetaVector theta = random_theta(10, 7, rng);
  PolyphaseFir fir = synthesize(theta);
  double tapErr = paraunitarity_error(fir);

  BankPlan plan = plan_bank({Fraction(2, 5), Fraction(1, 5), Fraction(2, 5)});
  SignalBuffer x;
  x.samples.resize(4000);
  for (double& v : x.samples) v = 2.0 * rng.next() - 1.0;
  SignalBuffer xr = synthesize_signal(fir, plan, analyze(fir, plan, x));
  std::size_t delay = 70;
  double prErr = 0.0;
  for (std::size_t i = 0; i < xr.samples.size(); ++i) {
    double ref = (i >= delay && i - delay < x.samples.size()) ? x.samples[i - delay] : 0.0;
    prErr = std::max(prErr, std::abs(xr.samples[i] - ref));
  }
  bool ok = tapErr < 1e-12 && prErr < 1e-9;
  return {ok, "tap error " + fmt(tapErr) + ", reconstruction error " + fmt(prErr)};
}

// ---- criterion 7: power complementarity ------------------------------------

Outcome criterion7() {
  SeededUniform rng(1112);
  BankPlan plan = plan_bank({Fraction(2, 5), Fraction(1, 5), Fraction(2, 5)});
  ThetaVector theta = random_theta(10, 7, rng);
  PolyphaseFir fir = synthesize(theta);
  FrequencyGrid grid(1024);
  FreqSamples samples = eval_freq(fir, grid);

  double worst = 0.0;
  for (const ChannelPlan& ch : plan.channels) {
    ModulationTransform mt = modulation_transform(ch.rowCount, plan.S);
    auto power = modulation_row_power(samples, static_cast<int>(ch.rowOffset), mt, grid);
    double expected = static_cast<double>(ch.rowCount) / static_cast<double>(plan.S);
    for (double v : power) worst = std::max(worst, std::abs(v - expected) / expected);
  }
  return {worst < 1e-8, "max relative deviation " + fmt(worst) + " from K_n/S"};
}

// ---- criterion 8: design quality on the three-band example -----------------

struct DesignRun {
  OptimizeResult result;
  DesignProblem prob;
  PolyphaseFir fir;
  double elapsed = 0.0;
};

DesignRun run_example1_design() {
  auto start = std::chrono::steady_clock::now();
  DesignRun run;
  run.prob = build_design_problem({Fraction(2, 5), Fraction(1, 5), Fraction(2, 5)},
                                  Fraction(1, 20), 7, 1024, 20240801);
  OptimizeOptions opts;
  opts.restarts = 8;
  opts.maxIter = 200;
  run.result = optimize(run.prob, opts);
  run.fir = synthesize(run.result.theta);
  run.elapsed = seconds_since(start);
  return run;
}

Outcome criterion8(const DesignRun& run) {
  const DesignProblem& prob = run.prob;
  double ratio = run.result.bestInitialValue / std::max(run.result.value, 1e-300);
  bool ok = ratio >= 20.0;
  std::string detail = "D " + fmt(run.result.bestInitialValue) + " -> " +
                       fmt(run.result.value) + " (x" + fmt(ratio) + ")";

  // Stopband attenuation per nonzero-spectrum filter.
  FrequencyGrid grid(prob.gridSize);
  auto responses = filter_responses(run.fir, prob);
  double worstDb = -1e9;
  for (std::size_t f = 0; f < prob.tasks.size(); ++f) {
    const auto& task = prob.tasks[f];
    const CharFilterSpec& spec = prob.specs[task.channel][task.d];
    if (spec.idealPass.empty()) continue;
    double peak = 0.0;
    double stopSum = 0.0;
    std::size_t stopCount = 0;
    for (int i = 0; i < grid.count; ++i) {
      Fraction phi(2 * i - grid.count, grid.count);
      double mag = std::abs(responses[f][i]);
      if (spec.idealPass.contains(phi)) peak = std::max(peak, mag);
      if (spec.stopband.contains(phi)) {
        stopSum += mag;
        ++stopCount;
      }
    }
    double db = 20.0 * std::log10(stopSum / static_cast<double>(stopCount) / peak);
    worstDb = std::max(worstDb, db);
  }
  ok = ok && worstDb <= -20.0;
  detail += ", worst mean stopband " + fmt(worstDb) + " dB";

  // Energy concentration of a 0.7*pi tone into channel 2.
  SignalBuffer x;
  x.samples.resize(4096);
  for (std::size_t n = 0; n < x.samples.size(); ++n) {
    x.samples[n] = std::sin(0.7 * kPi * static_cast<double>(n));
  }
  SubbandSet sb = analyze(run.fir, prob.plan, x);
  double total = 0.0;
  std::vector<double> energies;
  for (std::size_t n = 0; n < sb.channels.size(); ++n) {
    energies.push_back(signal_energy(interleave_channel(sb, static_cast<int>(n))));
    total += energies.back();
  }
  double share = energies[2] / total;
  ok = ok && share >= 0.99;
  detail += ", tone share " + fmt(100.0 * share) + "%";

  ok = ok && run.elapsed <= 600.0;
  detail += ", " + fmt(run.elapsed) + "s";
  return {ok, detail};
}

// ---- criterion 9: byte-identical artifacts for identical config + seed -----

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Outcome criterion9() {
  fs::path base = fs::path(RFB_TEST_TMP);
  fs::remove_all(base / "det1");
  fs::remove_all(base / "det2");
  fs::create_directories(base / "det1");
  fs::create_directories(base / "det2");

  std::string args =
      " design --partition 1/2,1/2 --stages 3 --grid 256 --restarts 2 --max-iter 40"
      " --seed 31415 --out-dir ";
  std::string cli = RFB_CLI_PATH;
  int c1 = std::system((cli + args + (base / "det1").string() + " >/dev/null 2>&1").c_str());
  int c2 = std::system((cli + args + (base / "det2").string() + " >/dev/null 2>&1").c_str());
  if (WEXITSTATUS(c1) != WEXITSTATUS(c2)) return {false, "exit codes differ"};
  int code = WEXITSTATUS(c1);
  if (code != kExitOk && code != kExitNotConverged) {
    return {false, "design failed with exit " + std::to_string(code)};
  }

  int compared = 0;
  for (const auto& entry : fs::directory_iterator(base / "det1")) {
    fs::path other = base / "det2" / entry.path().filename();
    if (!fs::exists(other)) return {false, "missing " + other.string()};
    if (slurp(entry.path()) != slurp(other)) {
      return {false, "artifact differs: " + entry.path().filename().string()};
    }
    ++compared;
  }
  return {compared > 0, std::to_string(compared) + " artifacts byte-identical"};
}

}  // namespace

int main() {
  fs::create_directories(RFB_TEST_TMP);

  int failures = 0;
  auto report = [&](int index, const std::string& name, const Outcome& o) {
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << index << ": " << name
              << " — " << o.detail << "\n";
    if (!o.pass) ++failures;
  };

  auto guard = [&](int index, const std::string& name, const std::function<Outcome()>& fn) {
    try {
      report(index, name, fn());
    } catch (const std::exception& e) {
      report(index, name, {false, std::string("exception: ") + e.what()});
    }
  };

  guard(1, "three-band plan reproduction", criterion1);
  guard(2, "four-band plan reproduction", criterion2);
  guard(3, "ideal modulation matrix ground truth", criterion3);
  guard(4, "mapping oracle on 500 random partitions", criterion4);
  guard(5, "modulation shift identity", criterion5);
  guard(6, "paraunitarity and perfect reconstruction", criterion6);
  guard(7, "power complementarity", criterion7);

  try {
    DesignRun run = run_example1_design();
    guard(8, "three-band design quality", [&] { return criterion8(run); });
  } catch (const std::exception& e) {
    report(8, "three-band design quality", {false, std::string("exception: ") + e.what()});
  }

  guard(9, "determinism of design artifacts", criterion9);

  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
  } else {
    std::cout << failures << " criterion(s) failed\n";
  }
  return failures;
}
