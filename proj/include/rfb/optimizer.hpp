#ifndef RFB_OPTIMIZER_HPP
#define RFB_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "rfb/objective.hpp"

namespace rfb {

struct TracePoint {
  int iteration = 0;
  double value = 0.0;
  double gradNorm = 0.0;  // sup norm
};

// Iterates of the winning restart plus the restart count. Values are
// non-increasing within the trace.
struct OptimizationTrace {
  std::vector<TracePoint> iterates;
  int restarts = 0;
  ThetaVector best;
};

struct OptimizeOptions {
  int restarts = 8;
  int maxIter = 200;
  double gradTol = 1e-7;
};

struct OptimizeResult {
  ThetaVector theta;
  OptimizationTrace trace;
  double value = 0.0;
  bool converged = false;  // winning restart hit the gradient tolerance
  double bestInitialValue = 0.0;  // smallest objective among the random starts
};

// L-BFGS with Armijo backtracking; restart starting angles are drawn
// uniformly from [-pi, pi) with the problem seed. Ties between restarts go
// to the lower restart index. Non-convergence (iteration cap) is reported in
// `converged`, never by failing.
OptimizeResult optimize(const DesignProblem& prob, const OptimizeOptions& opts);

// Deterministic uniform draws used for starting points (and tests).
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  // [0, 1) with 53-bit resolution; reproducible across platforms.
  double next();
  // [-pi, pi)
  double next_angle();

 private:
  std::uint64_t next_u64();
  std::uint64_t state_;
};

ThetaVector random_theta(int N, int K, SeededUniform& rng);

}  // namespace rfb

#endif  // RFB_OPTIMIZER_HPP
