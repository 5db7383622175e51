#include "redist/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace redist::parallel {
namespace {

std::atomic<int> scoped_limit{0};

int env_limit() {
  static const int limit = [] {
    const char* raw = std::getenv("REDIST_THREADS");
    if (raw == nullptr) return 0;
    try {
      return std::max(0, std::stoi(raw));
    } catch (...) {
      return 0;
    }
  }();
  return limit;
}

}  // namespace

int worker_count() {
  int workers = omp_get_max_threads();
  if (const int env = env_limit(); env > 0) workers = std::min(workers, env);
  if (const int scoped = scoped_limit.load(); scoped > 0)
    workers = std::min(workers, scoped);
  return std::max(workers, 1);
}

WorkerLimit::WorkerLimit(int max_workers)
    : previous_(scoped_limit.exchange(std::max(max_workers, 1))) {}

WorkerLimit::~WorkerLimit() { scoped_limit.store(previous_); }

}  // namespace redist::parallel
