#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bcond {

// All batch kernels come in two lanes: a serial reference and an OpenMP
// lane. Both write results into index-addressed slots and reduce in index
// order, so the output is bit-identical regardless of lane or thread count.
enum class ExecPolicy { Serial, Parallel };

inline ExecPolicy default_policy() {
#ifdef _OPENMP
  return ExecPolicy::Parallel;
#else
  return ExecPolicy::Serial;
#endif
}

template <typename Fn>
void parallel_for(std::size_t n, ExecPolicy policy, Fn&& fn) {
#ifdef _OPENMP
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)policy;
#endif
  for (std::size_t i = 0; i < n; ++i) {
    fn(i);
  }
}

}  // namespace bcond
