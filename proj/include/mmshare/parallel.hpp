#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mmshare {

enum class ExecPolicy { Serial, Parallel };

// Thread count resolution: MMSHARE_THREADS env var wins, else the OpenMP
// default. Returns 1 when built without OpenMP.
inline int resolved_thread_count() {
#ifdef _OPENMP
  if (const char* env = std::getenv("MMSHARE_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs f(i) for i in [0, n). Results must be written to per-index slots;
// callers reduce sequentially afterwards so that Serial and Parallel
// policies produce bit-identical output. Exceptions cannot cross an OpenMP
// region, so the first one is caught and rethrown on the calling thread.
template <class F>
void parallel_for(std::size_t n, ExecPolicy policy, F&& f) {
#ifdef _OPENMP
  if (policy == ExecPolicy::Parallel) {
    int threads = resolved_thread_count();
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(mmshare_parallel_for_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#endif
  (void)policy;
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace mmshare
