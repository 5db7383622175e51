#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>

namespace redist::parallel {

// Arrays shorter than this are evaluated serially.
inline constexpr std::size_t min_parallel_length = 8192;

// Number of OpenMP workers to use: omp_get_max_threads(), capped by the
// REDIST_THREADS environment variable and by any active WorkerLimit.
int worker_count();

// Caps worker_count() for the lifetime of the object (benchmarks pin timing
// sections to one thread with this). Not reentrant across threads.
class WorkerLimit {
 public:
  explicit WorkerLimit(int max_workers);
  ~WorkerLimit();
  WorkerLimit(const WorkerLimit&) = delete;
  WorkerLimit& operator=(const WorkerLimit&) = delete;

 private:
  int previous_;
};

// Runs fn(i) for i in [0, n) across workers. Output placement is the
// caller's business (index-based), so results do not depend on scheduling.
// If any task throws, the exception of the lowest failing index is rethrown
// after all tasks finish.
template <class Fn>
void for_each_task(std::size_t n, Fn&& fn) {
  std::exception_ptr failure;
  std::size_t failed_at = std::numeric_limits<std::size_t>::max();
  std::mutex guard;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (static_cast<std::size_t>(i) < failed_at) {
        failed_at = static_cast<std::size_t>(i);
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace redist::parallel

namespace redist::parallel {

// out[i] = fn(in[i]), chunked across workers for long arrays.
template <class In, class Out, class Fn>
void map_elements(In in, Out out, Fn fn) {
  const long n = static_cast<long>(in.size());
  if (in.size() < min_parallel_length || worker_count() == 1) {
    for (long i = 0; i < n; ++i) out[i] = fn(in[i]);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (long i = 0; i < n; ++i) out[i] = fn(in[i]);
}

}  // namespace redist::parallel
