#include "redist/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "redist/analytic.hpp"
#include "redist/error.hpp"
#include "redist/kde.hpp"
#include "redist/learned.hpp"
#include "redist/parallel.hpp"

namespace redist {

std::string_view to_string(BenchAlgorithm algorithm) {
  return algorithm == BenchAlgorithm::learned ? "learned" : "kde";
}

BenchRecord time_fit(BenchAlgorithm algorithm, std::size_t n, std::size_t k,
                     const BenchOptions& options) {
  if (options.repetitions == 0) throw domain_error("benchmark needs at least one repetition");
  std::vector<double> samples = AnalyticDistribution::normal(0, 1).rvs(n, options.seed);
  if (options.presorted) std::sort(samples.begin(), samples.end());

  const parallel::WorkerLimit single_worker(1);
  std::vector<double> times;
  std::vector<double> work;
  for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
    work = samples;
    const auto start = std::chrono::steady_clock::now();
    if (algorithm == BenchAlgorithm::learned) {
      LearnedOptions fit_options;
      fit_options.bins = std::min(k, n);
      fit_options.keep_input_order = false;
      const LearnedDistribution fit = fit_learned(work, fit_options);
      (void)fit;
    } else {
      KdeOptions fit_options;
      fit_options.grid_density = k;
      const KdeModel fit = fit_kde(work, fit_options);
      (void)fit;
    }
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(stop - start).count());
  }
  std::nth_element(times.begin(), times.begin() + static_cast<long>(times.size() / 2), times.end());

  BenchRecord record;
  record.algorithm = algorithm;
  record.n = n;
  record.k = k;
  record.wall_time = std::max(times[times.size() / 2], 1e-9);
  if (algorithm == BenchAlgorithm::learned) {
    const std::size_t bins = std::min(k, n);
    // lattice points, lattice values and selection ranks
    record.peak_extra_bytes = bins * (2 * sizeof(double) + sizeof(std::size_t));
  } else {
    // copied centers plus the cdf grid
    record.peak_extra_bytes = (n + 2 * k) * sizeof(double);
  }
  return record;
}

std::vector<BenchRecord> run_bench(std::span<const BenchAlgorithm> algorithms,
                                   std::span<const std::size_t> ns,
                                   std::span<const std::size_t> ks,
                                   const BenchOptions& options) {
  std::vector<BenchRecord> records;
  for (const BenchAlgorithm algorithm : algorithms)
    for (const std::size_t n : ns)
      for (const std::size_t k : ks) records.push_back(time_fit(algorithm, n, k, options));
  return records;
}

std::string bench_csv(std::span<const BenchRecord> records) {
  std::ostringstream out;
  out << "algorithm,n,k,wall_time_s,peak_extra_bytes\n";
  out.precision(9);
  for (const BenchRecord& r : records) {
    out << to_string(r.algorithm) << ',' << r.n << ',' << r.k << ',' << r.wall_time
        << ',' << r.peak_extra_bytes << '\n';
  }
  return out.str();
}

}  // namespace redist
