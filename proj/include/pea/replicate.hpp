#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pea {

enum class Engine { Serial, OpenMP };

// Runs fn(rep) for rep in [0, reps) and returns the results indexed by rep.
// Replications are independent (each derives its own seed stream from its
// index), so the OpenMP engine may execute them in any order across threads
// and still produce output identical to the serial engine. threads <= 0
// keeps the runtime default.
template <typename R, typename F>
std::vector<R> run_replications(int64_t reps, Engine engine, F&& fn,
                                int threads = 0) {
  std::vector<R> out(static_cast<size_t>(reps < 0 ? 0 : reps));
#ifdef _OPENMP
  if (engine == Engine::OpenMP) {
    if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic)
    for (int64_t r = 0; r < reps; ++r) out[static_cast<size_t>(r)] = fn(r);
    return out;
  }
#else
  (void)threads;
#endif
  for (int64_t r = 0; r < reps; ++r) out[static_cast<size_t>(r)] = fn(r);
  return out;
}

}  // namespace pea
