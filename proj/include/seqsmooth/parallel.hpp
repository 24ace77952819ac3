#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace seqsmooth {

// Grid sweeps run either as a plain serial loop (the reference path, kept
// for testing) or as an OpenMP parallel-for over grid points. Grid points
// never share mutable state, so both paths produce bit-identical results.
enum class ExecPolicy { Serial, OpenMP };

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_thread_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace seqsmooth
