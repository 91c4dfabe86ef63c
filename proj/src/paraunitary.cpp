#include "rfb/paraunitary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rfb/parallel.hpp"

namespace rfb {

namespace {

constexpr double kPi = std::numbers::pi;

void apply_plane_rotation(Mat& u, int i, int j, double theta) {
  // Rows i and j of u <- G(i, j, theta) * u.
  double c = std::cos(theta);
  double s = std::sin(theta);
  for (int col = 0; col < u.cols; ++col) {
    double xi = u.at(i, col);
    double xj = u.at(j, col);
    u.at(i, col) = c * xi - s * xj;
    u.at(j, col) = s * xi + c * xj;
  }
}

}  // namespace

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

double FrequencyGrid::omega(int i) const {
  return -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(count);
}

std::vector<double> unit_vector_from_angles(const double* angles, int N) {
  std::vector<double> v(static_cast<std::size_t>(N), 0.0);
  double sines = 1.0;
  for (int i = 0; i < N - 1; ++i) {
    v[i] = sines * std::cos(angles[i]);
    sines *= std::sin(angles[i]);
  }
  v[N - 1] = sines;
  return v;
}

Mat rotation_product(const double* angles, int N) {
  Mat u = Mat::identity(N);
  int idx = 0;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      apply_plane_rotation(u, i, j, angles[idx++]);
    }
  }
  return u;
}

PolyphaseFir synthesize(const ThetaVector& theta) {
  const int N = theta.N;
  const int K = theta.K;
  if (N < 1 || K < 0 || theta.angles.size() != ThetaVector::expected_size(N, K)) {
    throw std::invalid_argument("theta vector size does not match (N, K)");
  }

  PolyphaseFir fir;
  fir.N = N;
  fir.order = K;
  fir.taps.assign(static_cast<std::size_t>(K) + 1, Mat(N, N));

  const double* rot = theta.angles.data() + static_cast<std::size_t>(K) * (N - 1);
  fir.taps[0] = rotation_product(rot, N);

  // Fold the degree-one stages in from the right: each stage splits every
  // accumulated tap between the current delay and the next.
  std::vector<double> proj(static_cast<std::size_t>(N));
  for (int stage = K - 1; stage >= 0; --stage) {
    std::vector<double> v =
        unit_vector_from_angles(theta.angles.data() + static_cast<std::size_t>(stage) * (N - 1), N);
    int used = K - stage;  // taps 0..used-1 currently populated
    for (int t = used; t >= 0; --t) {
      const Mat& lower = (t > 0) ? fir.taps[t - 1] : fir.taps[0];
      Mat& cur = fir.taps[t];
      // cur <- (I - v v^T) cur + v v^T lower, with the t == 0 and t == used
      // boundary taps taking only one term.
      for (int c = 0; c < N; ++c) {
        double dot_cur = 0.0;
        double dot_low = 0.0;
        for (int r = 0; r < N; ++r) {
          if (t < used) dot_cur += v[r] * cur.at(r, c);
          if (t > 0) dot_low += v[r] * lower.at(r, c);
        }
        proj[c] = dot_low - dot_cur;
      }
      for (int r = 0; r < N; ++r) {
        double vr = v[r];
        for (int c = 0; c < N; ++c) {
          double base = (t < used) ? cur.at(r, c) : 0.0;
          cur.at(r, c) = base + vr * proj[c];
        }
      }
    }
  }
  return fir;
}

double paraunitarity_error(const PolyphaseFir& fir) {
  const int N = fir.N;
  const int T = static_cast<int>(fir.taps.size());
  double worst = 0.0;
  for (int s = 0; s < T; ++s) {
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < N; ++c) {
        double acc = 0.0;
        for (int t = 0; t + s < T; ++t) {
          const Mat& a = fir.taps[t];
          const Mat& b = fir.taps[t + s];
          for (int j = 0; j < N; ++j) acc += a.at(r, j) * b.at(c, j);
        }
        double target = (s == 0 && r == c) ? 1.0 : 0.0;
        double dev = std::abs(acc - target);
        if (dev > worst) worst = dev;
      }
    }
  }
  return worst;
}

void eval_at(const PolyphaseFir& fir, double omega, std::complex<double>* out) {
  const int N = fir.N;
  const std::size_t nn = static_cast<std::size_t>(N) * N;
  const std::complex<double> step = std::polar(1.0, -omega);
  std::complex<double> phase(1.0, 0.0);
  for (std::size_t e = 0; e < nn; ++e) out[e] = fir.taps[0].a[e];
  for (std::size_t t = 1; t < fir.taps.size(); ++t) {
    phase *= step;
    const double* tap = fir.taps[t].a.data();
    for (std::size_t e = 0; e < nn; ++e) out[e] += tap[e] * phase;
  }
}

FreqSamples eval_freq_reference(const PolyphaseFir& fir, const FrequencyGrid& grid) {
  FreqSamples s;
  s.gridCount = grid.count;
  s.rows = fir.N;
  s.cols = fir.N;
  s.v.resize(static_cast<std::size_t>(grid.count) * fir.N * fir.N);
  const std::size_t nn = static_cast<std::size_t>(fir.N) * fir.N;
  for (int g = 0; g < grid.count; ++g) {
    eval_at(fir, grid.omega(g), s.v.data() + static_cast<std::size_t>(g) * nn);
  }
  return s;
}

FreqSamples eval_freq(const PolyphaseFir& fir, const FrequencyGrid& grid) {
  FreqSamples s;
  s.gridCount = grid.count;
  s.rows = fir.N;
  s.cols = fir.N;
  s.v.resize(static_cast<std::size_t>(grid.count) * fir.N * fir.N);
  const std::size_t nn = static_cast<std::size_t>(fir.N) * fir.N;
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (int g = 0; g < grid.count; ++g) {
    eval_at(fir, grid.omega(g), s.v.data() + static_cast<std::size_t>(g) * nn);
  }
  return s;
}

}  // namespace rfb
