#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace redist {

enum class BenchAlgorithm { learned, kde };

std::string_view to_string(BenchAlgorithm algorithm);

struct BenchRecord {
  BenchAlgorithm algorithm = BenchAlgorithm::learned;
  std::size_t n = 0;
  std::size_t k = 0;
  double wall_time = 0.0;            // seconds, median over repetitions
  std::size_t peak_extra_bytes = 0;  // estimate: buffers allocated by the fit
};

struct BenchOptions {
  std::size_t repetitions = 5;
  std::uint64_t seed = 0;
  // Feed already sorted samples instead of shuffled ones.
  bool presorted = false;
};

// Times one fit of n standard-normal samples with K = k (bins for the learned
// estimator, grid density for the KDE). Timing runs on a single worker.
BenchRecord time_fit(BenchAlgorithm algorithm, std::size_t n, std::size_t k,
                     const BenchOptions& options = {});

std::vector<BenchRecord> run_bench(std::span<const BenchAlgorithm> algorithms,
                                   std::span<const std::size_t> ns,
                                   std::span<const std::size_t> ks,
                                   const BenchOptions& options = {});

// CSV with header "algorithm,n,k,wall_time_s,peak_extra_bytes".
std::string bench_csv(std::span<const BenchRecord> records);

}  // namespace redist
