#ifndef KGRAPH_PARALLEL_HPP
#define KGRAPH_PARALLEL_HPP

#include <cstddef>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace kgraph::par {

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline int thread_id() {
#if defined(_OPENMP)
  return omp_get_thread_num();
#else
  return 0;
#endif
}

/// Fixed-shape pairwise reduction.  The result depends only on the input
/// order, never on the thread count, so parallel sums stay bit-reproducible.
inline double tree_sum(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  size_t n = xs.size();
  while (n > 1) {
    size_t half = (n + 1) / 2;
    for (size_t i = 0; i + half < n; ++i) xs[i] += xs[i + half];
    n = half;
  }
  return xs[0];
}

}  // namespace kgraph::par

#endif
