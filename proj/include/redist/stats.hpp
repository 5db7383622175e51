#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "redist/analytic.hpp"
#include "redist/distribution.hpp"

namespace redist {

// One-sample Kolmogorov-Smirnov result at significance 0.01.
struct KsReport {
  std::size_t n = 0;
  double statistic = 0.0;
  double critical_value_01 = 0.0;
  bool pass = false;
};

// Asymptotic alpha = 0.01 critical value 1.628 / sqrt(n).
double ks_critical_value_01(std::size_t n);

// sup_t |eCDF(t) - F(t)| for the reference distribution's cdf.
double ks_statistic(std::span<const double> sample, const Distribution& reference);

// Requires n >= 40 (the asymptotic critical value is meaningless below).
KsReport ks_test(std::span<const double> sample, const Distribution& reference);

// Monte Carlo check of the asymptotic variance of the fitted transform:
// sqrt(n) (R_hat(x) - R(x)) ~ N(0, g'(F(x))^2 (F(x) - F(x)^2)) with
// g = F_T^-1 and R_hat built from a learned fit of n source draws.
struct ConsistencyReport {
  std::size_t trials = 0;
  std::size_t n = 0;
  double x = 0.0;
  double source_cdf = 0.0;         // F(x)
  double exact_transform = 0.0;    // R(x)
  double theoretical_variance = 0.0;
  double empirical_variance = 0.0;
  double ratio = 0.0;              // empirical / theoretical
};

ConsistencyReport consistency_experiment(const AnalyticDistribution& source,
                                         const Distribution& target,
                                         std::size_t trials, std::size_t n,
                                         double x, std::uint64_t seed);

}  // namespace redist
