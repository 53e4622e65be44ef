#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace farofangs::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
#ifdef _OPENMP
  return static_cast<unsigned>(omp_get_max_threads());
#else
  return 1;
#endif
}

inline int thread_index() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

// Runs body(i) for i in [0, count) on up to `threads` workers. body must
// only write to slots owned by index i.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const auto n = static_cast<std::ptrdiff_t>(count);
#ifdef _OPENMP
  const int workers = static_cast<int>(threads == 0 ? 1 : threads);
#pragma omp parallel for schedule(dynamic) num_threads(workers) if (workers > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
#else
  (void)threads;
  for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
#endif
}

}  // namespace farofangs::detail
