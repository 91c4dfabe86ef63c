#ifndef RFB_PARALLEL_HPP
#define RFB_PARALLEL_HPP

#include <cstddef>
#include <vector>

namespace rfb {

// Worker cap: RFB_THREADS if set (clamped to >= 1), otherwise the OpenMP
// default. Read once per process.
int worker_count();

// Fixed chunk count for parallel reductions. Partial sums are produced per
// chunk and combined serially in chunk order, so results do not depend on the
// number of worker threads.
inline constexpr int kReductionChunks = 64;

struct ChunkRange {
  std::size_t begin;
  std::size_t end;
};

inline ChunkRange reduction_chunk(std::size_t total, int chunk) {
  std::size_t b = total * static_cast<std::size_t>(chunk) / kReductionChunks;
  std::size_t e = total * static_cast<std::size_t>(chunk + 1) / kReductionChunks;
  return {b, e};
}

// Combines per-chunk partials in index order.
inline double combine_chunks(const std::vector<double>& partials) {
  double acc = 0.0;
  for (double p : partials) acc += p;
  return acc;
}

}  // namespace rfb

#endif  // RFB_PARALLEL_HPP
