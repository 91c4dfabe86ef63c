#include "rfb/optimizer.hpp"

#include <cmath>
#include <deque>
#include <numbers>

namespace rfb {

namespace {

constexpr double kPi = std::numbers::pi;

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct RestartOutcome {
  ThetaVector theta;
  std::vector<TracePoint> iterates;
  double value = 0.0;
  bool converged = false;
};

// One L-BFGS descent from a fixed starting point.
RestartOutcome run_descent(const DesignProblem& prob, ThetaVector theta,
                           const OptimizeOptions& opts) {
  const std::size_t dim = theta.angles.size();
  const int memory = 10;

  std::deque<std::vector<double>> sHist, yHist;
  std::deque<double> rhoHist;

  double f = objective(theta, prob);
  std::vector<double> g = gradient(theta, prob);

  RestartOutcome out;
  out.iterates.push_back({0, f, inf_norm(g)});

  for (int iter = 1; iter <= opts.maxIter; ++iter) {
    if (inf_norm(g) < opts.gradTol) {
      out.converged = true;
      break;
    }

    // Two-loop recursion.
    std::vector<double> dir = g;
    std::vector<double> alpha(sHist.size());
    for (int i = static_cast<int>(sHist.size()) - 1; i >= 0; --i) {
      alpha[i] = rhoHist[i] * dot(sHist[i], dir);
      for (std::size_t j = 0; j < dim; ++j) dir[j] -= alpha[i] * yHist[i][j];
    }
    if (!sHist.empty()) {
      double gammaNum = dot(sHist.back(), yHist.back());
      double gammaDen = dot(yHist.back(), yHist.back());
      double gamma = (gammaDen > 0.0) ? gammaNum / gammaDen : 1.0;
      for (double& x : dir) x *= gamma;
    }
    for (std::size_t i = 0; i < sHist.size(); ++i) {
      double beta = rhoHist[i] * dot(yHist[i], dir);
      for (std::size_t j = 0; j < dim; ++j) dir[j] += (alpha[i] - beta) * sHist[i][j];
    }
    for (double& x : dir) x = -x;

    double slope = dot(g, dir);
    if (slope >= 0.0) {
      // Not a descent direction; drop history and fall back to steepest descent.
      sHist.clear();
      yHist.clear();
      rhoHist.clear();
      for (std::size_t j = 0; j < dim; ++j) dir[j] = -g[j];
      slope = dot(g, dir);
      if (slope >= 0.0) break;  // gradient numerically zero
    }

    // Armijo backtracking.
    const double c1 = 1e-4;
    double step = 1.0;
    ThetaVector trial = theta;
    double fTrial = f;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      for (std::size_t j = 0; j < dim; ++j) trial.angles[j] = theta.angles[j] + step * dir[j];
      fTrial = objective(trial, prob);
      if (fTrial <= f + c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no progress at machine scale

    std::vector<double> gTrial = gradient(trial, prob);

    std::vector<double> s(dim), y(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      s[j] = trial.angles[j] - theta.angles[j];
      y[j] = gTrial[j] - g[j];
    }
    double sy = dot(s, y);
    if (sy > 1e-12) {
      sHist.push_back(std::move(s));
      yHist.push_back(std::move(y));
      rhoHist.push_back(1.0 / sy);
      if (static_cast<int>(sHist.size()) > memory) {
        sHist.pop_front();
        yHist.pop_front();
        rhoHist.pop_front();
      }
    }

    theta = trial;
    f = fTrial;
    g = std::move(gTrial);
    out.iterates.push_back({iter, f, inf_norm(g)});
  }

  if (inf_norm(g) < opts.gradTol) out.converged = true;
  out.theta = std::move(theta);
  out.value = f;
  return out;
}

}  // namespace

std::uint64_t SeededUniform::next_u64() {
  // splitmix64: pinned constants, reproducible everywhere.
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SeededUniform::next() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededUniform::next_angle() { return -kPi + 2.0 * kPi * next(); }

ThetaVector random_theta(int N, int K, SeededUniform& rng) {
  ThetaVector theta;
  theta.N = N;
  theta.K = K;
  theta.angles.resize(ThetaVector::expected_size(N, K));
  for (double& a : theta.angles) a = rng.next_angle();
  return theta;
}

OptimizeResult optimize(const DesignProblem& prob, const OptimizeOptions& opts) {
  if (opts.restarts < 1) throw std::invalid_argument("need at least one restart");

  // All starting points are drawn up front so the draws do not depend on how
  // the restarts are executed.
  SeededUniform rng(prob.seed);
  std::vector<ThetaVector> starts;
  starts.reserve(opts.restarts);
  for (int r = 0; r < opts.restarts; ++r) {
    starts.push_back(random_theta(prob.matrix_size(), prob.K, rng));
  }

  OptimizeResult result;
  result.trace.restarts = opts.restarts;
  int bestIndex = -1;
  RestartOutcome best;
  double bestInitial = 0.0;
  for (int r = 0; r < opts.restarts; ++r) {
    RestartOutcome outcome = run_descent(prob, starts[r], opts);
    double initial = outcome.iterates.front().value;
    if (r == 0 || initial < bestInitial) bestInitial = initial;
    if (bestIndex < 0 || outcome.value < best.value) {
      best = std::move(outcome);
      bestIndex = r;
    }
  }

  result.theta = best.theta;
  result.trace.iterates = best.iterates;
  result.trace.best = best.theta;
  result.value = best.value;
  result.converged = best.converged;
  result.bestInitialValue = bestInitial;
  return result;
}

}  // namespace rfb
