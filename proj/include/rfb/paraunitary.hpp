#ifndef RFB_PARAUNITARY_HPP
#define RFB_PARAUNITARY_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace rfb {

// Dense row-major matrix, sized for polyphase work (tens of rows at most).
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  static Mat identity(int n);
};

// Angle parameterization of an N x N FIR paraunitary matrix with K
// degree-one stages: K*(N-1) direction angles plus N*(N-1)/2 rotation angles
// for the constant orthogonal tail factor.
struct ThetaVector {
  int N = 0;
  int K = 0;
  std::vector<double> angles;

  static std::size_t expected_size(int N, int K) {
    return static_cast<std::size_t>(K) * (N - 1) +
           static_cast<std::size_t>(N) * (N - 1) / 2;
  }
};

// FIR matrix H(z) = sum_t taps[t] z^{-t}; synthesize() guarantees
// paraunitarity structurally.
struct PolyphaseFir {
  int N = 0;
  int order = 0;  // K; taps.size() == K + 1
  std::vector<Mat> taps;
};

struct FrequencyGrid {
  int count = 0;
  explicit FrequencyGrid(int n) : count(n) {}
  double omega(int i) const;  // -pi + 2*pi*i/count
};

// Unit vector from N-1 hyperspherical angles; all angles zero gives e_0.
std::vector<double> unit_vector_from_angles(const double* angles, int N);

// Constant orthogonal factor: product of plane rotations over all index
// pairs (i, j), i < j, in lexicographic order.
Mat rotation_product(const double* angles, int N);

// H(z) = V_1(z) * ... * V_K(z) * U0 with V_i(z) = I - v v^T + v v^T z^{-1}.
PolyphaseFir synthesize(const ThetaVector& theta);

// max_s || sum_t taps[t] taps[t+s]^T - delta_{s0} I ||_inf; zero for exact
// paraunitarity.
double paraunitarity_error(const PolyphaseFir& fir);

// Frequency samples of H on a grid: flat [g][r][c] storage.
struct FreqSamples {
  int gridCount = 0;
  int rows = 0;
  int cols = 0;
  std::vector<std::complex<double>> v;

  const std::complex<double>& at(int g, int r, int c) const {
    return v[(static_cast<std::size_t>(g) * rows + r) * cols + c];
  }
  std::complex<double>& at(int g, int r, int c) {
    return v[(static_cast<std::size_t>(g) * rows + r) * cols + c];
  }
};

// Parallel over grid points; results are independent of the thread count.
FreqSamples eval_freq(const PolyphaseFir& fir, const FrequencyGrid& grid);
// Plain serial loop kept as the reference for tests and benchmarks.
FreqSamples eval_freq_reference(const PolyphaseFir& fir, const FrequencyGrid& grid);

// Single-frequency evaluation.
void eval_at(const PolyphaseFir& fir, double omega, std::complex<double>* out);

}  // namespace rfb

#endif  // RFB_PARAUNITARY_HPP
