#ifndef RFB_OBJECTIVE_HPP
#define RFB_OBJECTIVE_HPP

#include <cstdint>
#include <vector>

#include "rfb/band_plan.hpp"
#include "rfb/char_filters.hpp"
#include "rfb/modulation.hpp"
#include "rfb/paraunitary.hpp"

namespace rfb {

// Stopband-energy design problem over an S x S paraunitary matrix with K
// stages: D(theta) = sum over channels and characterizing filters of the
// stopband energy of the realized filter responses.
struct DesignProblem {
  BankPlan plan;
  std::vector<std::vector<CharFilterSpec>> specs;  // [channel][residue]
  std::vector<ImmPair> imms;                       // bank-scale pair per channel
  Fraction epsilon;   // transition bandwidth, units of pi
  int K = 7;          // degree-one stages
  int gridSize = 1024;
  std::uint64_t seed = 1;

  // Derived integration bookkeeping, filled by finalize(). The responses the
  // objective needs are evaluated only on the stopband grid points, from
  // precomputed modulation weights and a compacted set of matrix samples.
  struct FilterTask {
    int channel = 0;
    std::int64_t d = 0;
    ElementIndex rep{0, 0};
    ModulationTransform mt;
    int rowOffset = 0;
    std::vector<std::pair<int, int>> runs;  // index ranges [b, e) inside the stopband
    std::vector<int> points;                // concatenation of the runs
    std::vector<int> sampleSlot;            // per point: compacted master-sample slot
    std::vector<std::complex<double>> weights;  // per point: P*Q modulation factors
  };
  std::vector<FilterTask> tasks;
  std::vector<int> neededMaster;  // master grid indices any task touches

  int matrix_size() const { return static_cast<int>(plan.S); }
  std::size_t theta_dim() const {
    return ThetaVector::expected_size(matrix_size(), K);
  }
  void finalize();
};

// Full pipeline: plan the bank, build and oracle-check the bank-scale ideal
// matrices, derive spectra and stopbands, and precompute integration runs.
DesignProblem build_design_problem(const std::vector<Fraction>& partition,
                                   const Fraction& epsilon, int K, int gridSize,
                                   std::uint64_t seed);

// Stopband energy of the synthesized bank. Deterministic: identical results
// for any worker count.
double objective(const ThetaVector& theta, const DesignProblem& prob);

// Independent serial route (direct FIR evaluation instead of shared grid
// samples); used by tests and the benchmark.
double objective_reference(const ThetaVector& theta, const DesignProblem& prob);

// Central finite differences, step 1e-6, parallel across coordinates.
std::vector<double> gradient(const ThetaVector& theta, const DesignProblem& prob);
std::vector<double> gradient_reference(const ThetaVector& theta, const DesignProblem& prob);

// Per-filter frequency response of a synthesized bank on the problem grid.
std::vector<std::vector<std::complex<double>>> filter_responses(
    const PolyphaseFir& fir, const DesignProblem& prob);

}  // namespace rfb

#endif  // RFB_OBJECTIVE_HPP
