#include "rfb/objective.hpp"

#include <cmath>
#include <numbers>

#include "rfb/errors.hpp"
#include "rfb/parallel.hpp"

namespace rfb {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::pair<int, int>> stopband_runs(const SpectrumMask& sb, int gridSize) {
  // Grid points snapped inward: a point belongs to a run only if its exact
  // rational frequency lies inside the half-open stopband.
  std::vector<std::pair<int, int>> runs;
  int runStart = -1;
  for (int i = 0; i <= gridSize; ++i) {
    bool member = false;
    if (i < gridSize) {
      Fraction phi(2 * i - gridSize, gridSize);
      member = sb.contains(phi);
    }
    if (member && runStart < 0) runStart = i;
    if (!member && runStart >= 0) {
      if (i - runStart >= 2) runs.emplace_back(runStart, i);
      runStart = -1;
    }
  }
  return runs;
}

double integrate_runs(const std::vector<std::pair<int, int>>& runs,
                      const std::vector<std::complex<double>>& resp, int gridSize) {
  const double h = 2.0 * kPi / static_cast<double>(gridSize);
  double acc = 0.0;
  for (const auto& [b, e] : runs) {
    for (int i = b; i + 1 < e; ++i) {
      acc += 0.5 * (std::norm(resp[i]) + std::norm(resp[i + 1])) * h;
    }
  }
  return acc;
}

// exp(-j*2*pi*x/n)
std::complex<double> root_power(std::int64_t x, std::int64_t n) {
  return std::polar(1.0, -2.0 * kPi * static_cast<double>(pos_mod(x, n)) / static_cast<double>(n));
}

}  // namespace

void DesignProblem::finalize() {
  tasks.clear();
  neededMaster.clear();

  FrequencyGrid grid(gridSize);
  std::vector<int> slotOf(static_cast<std::size_t>(gridSize), -1);

  for (std::size_t n = 0; n < plan.channels.size(); ++n) {
    const ChannelPlan& ch = plan.channels[n];
    ModulationTransform mt = modulation_transform(ch.rowCount, plan.S);
    for (const CharFilterSpec& spec : specs[n]) {
      FilterTask task;
      task.channel = static_cast<int>(n);
      task.d = spec.d;
      task.rep = spec.representative;
      task.mt = mt;
      task.rowOffset = static_cast<int>(ch.rowOffset);
      task.runs = stopband_runs(spec.stopband, gridSize);
      for (const auto& [b, e] : task.runs) {
        for (int i = b; i < e; ++i) task.points.push_back(i);
      }

      const std::int64_t mp = mt.P;
      const std::int64_t mq = mt.Q;
      task.sampleSlot.resize(task.points.size());
      task.weights.resize(task.points.size() * static_cast<std::size_t>(mp * mq));
      for (std::size_t pi = 0; pi < task.points.size(); ++pi) {
        int i = task.points[pi];
        std::int64_t j = master_sample_index(i, mt.mpq, gridSize);
        if (slotOf[j] < 0) {
          slotOf[j] = static_cast<int>(neededMaster.size());
          neededMaster.push_back(static_cast<int>(j));
        }
        task.sampleSlot[pi] = slotOf[j];
        double phi = grid.omega(i);
        std::complex<double>* w = task.weights.data() + pi * static_cast<std::size_t>(mp * mq);
        for (std::int64_t r = 0; r < mp; ++r) {
          for (std::int64_t s = 0; s < mq; ++s) {
            std::complex<double> phase =
                std::polar(1.0 / static_cast<double>(mq),
                           phi * static_cast<double>(mt.p * s - mt.q * r));
            w[r * mq + s] =
                phase * root_power(task.rep.second * mt.p * s - task.rep.first * mt.q * r, mt.mpq);
          }
        }
      }
      tasks.push_back(std::move(task));
    }
  }
}

DesignProblem build_design_problem(const std::vector<Fraction>& partition,
                                   const Fraction& epsilon, int K, int gridSize,
                                   std::uint64_t seed) {
  DesignProblem prob;
  prob.plan = plan_bank(partition);
  prob.epsilon = epsilon;
  prob.K = K;
  prob.gridSize = gridSize;
  prob.seed = seed;

  for (std::size_t n = 0; n < prob.plan.channels.size(); ++n) {
    const ChannelPlan& ch = prob.plan.channels[n];
    BandMapping map = banked_mapping(ch, prob.plan.S);
    ImmPair pair = build_imm_pair(map);
    MappingCheck check = verify_mapping(pair.neg, pair.pos, map, 16 * prob.plan.S);
    if (!check.ok) {
      throw OracleFailure("channel " + std::to_string(n) +
                          " ideal mapping rejected: " + check.message);
    }
    ResidueStructure rs = residue_structure(map.P, map.Q);
    std::vector<CharFilterSpec> specs = ideal_spectra(map, pair, rs, static_cast<int>(n));
    for (CharFilterSpec& spec : specs) spec.stopband = stopband(spec, epsilon);
    prob.specs.push_back(std::move(specs));
    prob.imms.push_back(std::move(pair));
  }
  prob.finalize();
  return prob;
}

std::vector<std::vector<std::complex<double>>> filter_responses(
    const PolyphaseFir& fir, const DesignProblem& prob) {
  FrequencyGrid grid(prob.gridSize);
  FreqSamples samples = eval_freq(fir, grid);
  std::vector<std::vector<std::complex<double>>> out(prob.tasks.size());
  int nTasks = static_cast<int>(prob.tasks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (int f = 0; f < nTasks; ++f) {
    const auto& task = prob.tasks[f];
    out[f] = channel_modulation_response(samples, task.rowOffset, task.mt, task.rep, grid);
  }
  return out;
}

double objective(const ThetaVector& theta, const DesignProblem& prob) {
  if (theta.N != prob.matrix_size() || theta.K != prob.K) {
    throw std::invalid_argument("theta does not match the design problem");
  }
  PolyphaseFir fir = synthesize(theta);
  FrequencyGrid grid(prob.gridSize);

  // Evaluate only the master samples some stopband point needs.
  const int N = fir.N;
  const std::size_t nn = static_cast<std::size_t>(N) * N;
  std::vector<std::complex<double>> samples(prob.neededMaster.size() * nn);
  int nNeeded = static_cast<int>(prob.neededMaster.size());
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (int s = 0; s < nNeeded; ++s) {
    eval_at(fir, grid.omega(prob.neededMaster[s]), samples.data() + s * nn);
  }

  int nTasks = static_cast<int>(prob.tasks.size());
  std::vector<double> values(prob.tasks.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (int f = 0; f < nTasks; ++f) {
    const auto& task = prob.tasks[f];
    if (task.points.empty()) continue;
    const std::int64_t mp = task.mt.P;
    const std::int64_t mq = task.mt.Q;
    const std::size_t pq = static_cast<std::size_t>(mp * mq);

    std::vector<double> power(task.points.size());
    for (std::size_t pi = 0; pi < task.points.size(); ++pi) {
      const std::complex<double>* w = task.weights.data() + pi * pq;
      const std::complex<double>* block =
          samples.data() + static_cast<std::size_t>(task.sampleSlot[pi]) * nn +
          static_cast<std::size_t>(task.rowOffset) * N;
      std::complex<double> acc(0.0, 0.0);
      for (std::int64_t r = 0; r < mp; ++r) {
        const std::complex<double>* line = block + r * N;
        const std::complex<double>* wr = w + r * mq;
        for (std::int64_t s = 0; s < mq; ++s) acc += wr[s] * line[s];
      }
      power[pi] = std::norm(acc);
    }

    // Trapezoid over each run, in index order.
    const double h = 2.0 * kPi / static_cast<double>(prob.gridSize);
    double acc = 0.0;
    std::size_t offset = 0;
    for (const auto& [b, e] : task.runs) {
      std::size_t len = static_cast<std::size_t>(e - b);
      for (std::size_t i = 0; i + 1 < len; ++i) {
        acc += 0.5 * (power[offset + i] + power[offset + i + 1]) * h;
      }
      offset += len;
    }
    values[f] = acc;
  }
  // Serial combine in task order keeps the value thread-count independent.
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

double objective_reference(const ThetaVector& theta, const DesignProblem& prob) {
  PolyphaseFir fir = synthesize(theta);
  FrequencyGrid grid(prob.gridSize);
  std::vector<double> phis(static_cast<std::size_t>(prob.gridSize));
  for (int i = 0; i < prob.gridSize; ++i) phis[i] = grid.omega(i);

  double total = 0.0;
  for (const auto& task : prob.tasks) {
    if (task.runs.empty()) continue;
    auto resp = channel_modulation_response_at(fir, task.rowOffset, task.mt, task.rep, phis);
    total += integrate_runs(task.runs, resp, prob.gridSize);
  }
  return total;
}

namespace {

std::vector<double> fd_gradient(const ThetaVector& theta, const DesignProblem& prob,
                                bool parallel) {
  const double h = 1e-6;
  std::vector<double> g(theta.angles.size(), 0.0);
  int dim = static_cast<int>(theta.angles.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count()) if (parallel)
  for (int i = 0; i < dim; ++i) {
    ThetaVector probe = theta;
    probe.angles[i] = theta.angles[i] + h;
    double fp = objective(probe, prob);
    probe.angles[i] = theta.angles[i] - h;
    double fm = objective(probe, prob);
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace

std::vector<double> gradient(const ThetaVector& theta, const DesignProblem& prob) {
  return fd_gradient(theta, prob, true);
}

std::vector<double> gradient_reference(const ThetaVector& theta, const DesignProblem& prob) {
  return fd_gradient(theta, prob, false);
}

}  // namespace rfb
