#pragma once

#include <cstdint>
#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gflat {

// Execution policy for the sampling scans.  The serial path is the
// reference implementation the parallel kernels are tested against.
enum class Exec { serial, parallel };

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Deterministic fold over the index range [0, count): the range is
// split into contiguous chunks, each chunk is folded left to right,
// and chunk results are combined in index order.  `combine` must be
// associative and `init` its identity element; then the result is
// bit-identical for any thread count, and the serial reference is
// simply the single-chunk fold.
template <class State, class Eval, class Combine>
State scan_fold(std::int64_t count, State init, Eval&& eval, Combine&& combine, Exec exec) {
  auto fold_range = [&](std::int64_t lo, std::int64_t hi) {
    State state = init;
    for (std::int64_t i = lo; i < hi; ++i) state = combine(std::move(state), eval(i));
    return state;
  };

#ifdef _OPENMP
  if (exec == Exec::parallel && count > 1) {
    const std::int64_t chunks = std::min<std::int64_t>(hardware_threads(), count);
    if (chunks > 1) {
      std::vector<State> partial(static_cast<std::size_t>(chunks), init);
      std::exception_ptr error;
      #pragma omp parallel for schedule(static, 1)
      for (std::int64_t c = 0; c < chunks; ++c) {
        try {
          const std::int64_t lo = c * count / chunks;
          const std::int64_t hi = (c + 1) * count / chunks;
          partial[static_cast<std::size_t>(c)] = fold_range(lo, hi);
        } catch (...) {
          #pragma omp critical
          if (!error) error = std::current_exception();
        }
      }
      if (error) std::rethrow_exception(error);
      State state = std::move(partial[0]);
      for (std::size_t c = 1; c < partial.size(); ++c)
        state = combine(std::move(state), std::move(partial[c]));
      return state;
    }
  }
#else
  (void)exec;
#endif
  return fold_range(0, count);
}

}  // namespace gflat
