#include "redist/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "redist/error.hpp"
#include "redist/learned.hpp"
#include "redist/parallel.hpp"
#include "redist/rng.hpp"

namespace redist {

double ks_critical_value_01(std::size_t n) {
  return 1.628 / std::sqrt(static_cast<double>(n));
}

double ks_statistic(std::span<const double> sample, const Distribution& reference) {
  if (sample.empty()) throw domain_error("KS statistic needs a nonempty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const std::vector<double> f = reference.cdf(sorted);
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    d = std::max({d, f[i] - below, above - f[i]});
  }
  return d;
}

KsReport ks_test(std::span<const double> sample, const Distribution& reference) {
  if (sample.size() < 40)
    throw domain_error("KS check needs n >= 40 samples, got " +
                       std::to_string(sample.size()));
  KsReport report;
  report.n = sample.size();
  report.statistic = ks_statistic(sample, reference);
  report.critical_value_01 = ks_critical_value_01(report.n);
  report.pass = report.statistic < report.critical_value_01;
  return report;
}

ConsistencyReport consistency_experiment(const AnalyticDistribution& source,
                                         const Distribution& target,
                                         std::size_t trials, std::size_t n,
                                         double x, std::uint64_t seed) {
  if (trials < 2) throw domain_error("consistency needs at least two trials");
  if (n < 2) throw domain_error("consistency needs n >= 2 samples per trial");
  const auto [lo, hi] = source.support();
  if (!(std::isfinite(x) && x > lo && x < hi))
    throw domain_error("x must lie in the interior of the source support");

  ConsistencyReport report;
  report.trials = trials;
  report.n = n;
  report.x = x;
  report.source_cdf = source.cdf(x);
  report.exact_transform = target.ppf(report.source_cdf);
  const double slope = 1.0 / target.pdf(report.exact_transform);
  const double p = report.source_cdf;
  report.theoretical_variance = slope * slope * (p - p * p);

  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> scaled(trials);
  parallel::for_each_task(trials, [&](std::size_t m) {
    std::vector<double> draws = source.rvs(n, mix_seed(seed, m));
    LearnedOptions options;
    options.keep_input_order = false;
    options.seed = mix_seed(seed, m, 1);
    const LearnedDistribution fit = fit_learned(draws, options);
    const double estimate = target.ppf(fit.cdf(x));
    scaled[m] = root_n * (estimate - report.exact_transform);
  });

  double mean = 0.0;
  for (const double v : scaled) mean += v;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (const double v : scaled) ss += (v - mean) * (v - mean);
  report.empirical_variance = ss / static_cast<double>(trials - 1);
  report.ratio = report.empirical_variance / report.theoretical_variance;
  return report;
}

}  // namespace redist
