#include "rfb/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rfb {

int worker_count() {
  static const int cached = [] {
    const char* env = std::getenv("RFB_THREADS");
    if (env != nullptr) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
  }();
  return cached;
}

}  // namespace rfb
