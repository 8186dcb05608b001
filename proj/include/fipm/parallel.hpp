#pragma once

#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fipm {

/// Serial is the reference path; Parallel must produce bit-identical results
/// because every index is computed independently.
enum class ExecutionPolicy { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Calls fn(i) for i in [0, n). If any call throws, the exception from the
/// smallest failing index is rethrown after the loop, under both policies.
template <class Fn>
void for_each_index(ExecutionPolicy policy, int n, Fn&& fn) {
#ifdef _OPENMP
  if (policy == ExecutionPolicy::Parallel && n > 1 && omp_get_max_threads() > 1) {
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (auto& error : errors)
      if (error) std::rethrow_exception(error);
    return;
  }
#endif
  (void)policy;
  for (int i = 0; i < n; ++i) fn(i);
}

}  // namespace fipm
