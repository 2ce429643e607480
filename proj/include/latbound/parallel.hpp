#pragma once

#include <exception>
#include <vector>

namespace latbound {

/// Runs f(i) for i in [0, n) over OpenMP threads. Results must go to
/// per-index slots; the exception of the lowest failing index is rethrown.
template <class F>
void parallel_for(int n, F&& f) {
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(n > 0 ? n : 0));
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      f(i);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace latbound
