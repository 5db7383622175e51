#include "redist/kde.hpp"

#include <algorithm>
#include <cmath>

#include "redist/error.hpp"
#include "redist/kernels.hpp"
#include "redist/normal_math.hpp"
#include "redist/rng.hpp"
#include "redist/validate.hpp"

namespace redist {
namespace {

// Linear-interpolated quantile of sorted data (Hyndman-Fan type 7).
double quantile_sorted(std::span<const double> sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0) throw domain_error("bandwidth needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  double sd = 0.0;
  if (n > 1) {
    double mean = 0.0;
    for (const double v : sorted) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const double v : sorted) ss += (v - mean) * (v - mean);
    sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);

  double spread = std::min(sd, iqr / 1.34);
  // Same fallbacks as R's bw.nrd0 when one of the scale estimates vanishes.
  if (!(spread > 0.0)) spread = sd;
  if (!(spread > 0.0)) spread = std::fabs(sorted.front());
  if (!(spread > 0.0)) spread = 1.0;

  const double range = sorted.back() - sorted.front();
  const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  return std::max(h, 1e-12 * range);
}

KdeModel::KdeModel(std::vector<double> centers, double bandwidth,
                   std::size_t grid_density, CdfMethod method)
    : centers_(std::move(centers)),
      bandwidth_(bandwidth),
      grid_density_(grid_density),
      method_(method) {
  if (centers_.empty()) throw domain_error("kernel density needs at least one sample");
  require_finite(centers_, "sample");
  if (!(std::isfinite(bandwidth_) && bandwidth_ > 0.0))
    throw domain_error("bandwidth must be positive");
  if (grid_density_ < 2) throw domain_error("grid density must be at least 2");

  const auto [lo, hi] = std::minmax_element(centers_.begin(), centers_.end());
  support_ = {*lo - support_bandwidths * bandwidth_,
              *hi + support_bandwidths * bandwidth_};

  std::vector<double> lv(grid_density_);
  const double step = (support_.second - support_.first) /
                      static_cast<double>(grid_density_ - 1);
  for (std::size_t k = 0; k < grid_density_; ++k)
    lv[k] = support_.first + static_cast<double>(k) * step;
  lv.back() = support_.second;
  std::vector<double> lp(grid_density_);
  kernels::mixture_cdf(centers_, bandwidth_, lv, lp);

  // Where the mixture is flat to double precision (far-apart clusters, the
  // saturated upper tail) keep only the first node of each flat run so the
  // grid stays invertible.
  std::size_t kept = 1;
  for (std::size_t k = 1; k < grid_density_; ++k) {
    if (lp[k] > lp[kept - 1]) {
      lv[kept] = lv[k];
      lp[kept] = lp[k];
      ++kept;
    }
  }
  if (kept < 2) throw domain_error("kernel density grid collapsed; bandwidth too small");
  lv.resize(kept);
  lp.resize(kept);
  grid_ = PiecewiseLinear(std::move(lv), std::move(lp));
}

void KdeModel::cdf(std::span<const double> q, std::span<double> out,
                   std::optional<CdfMethod> method) const {
  require_finite(q, "cdf input");
  if (method.value_or(method_) == CdfMethod::precise)
    kernels::mixture_cdf(centers_, bandwidth_, q, out);
  else
    kernels::interpolate(grid_, kernels::Direction::forward, q, out);
}

void KdeModel::ppf(std::span<const double> p, std::span<double> out) const {
  require_probabilities(p);
  kernels::interpolate(grid_, kernels::Direction::inverse, p, out);
}

void KdeModel::pdf(std::span<const double> q, std::span<double> out) const {
  require_finite(q, "pdf input");
  kernels::mixture_pdf(centers_, bandwidth_, q, out);
}

std::vector<double> KdeModel::rvs(std::size_t n, std::uint64_t seed) const {
  if (n == 0) throw domain_error("rvs requires n >= 1");
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) {
    const double center = centers_[rng.below(centers_.size())];
    v = center + bandwidth_ * normal_math::ppf(rng.uniform());
  }
  return out;
}

double KdeModel::cdf(double q, std::optional<CdfMethod> method) const {
  double out;
  cdf(std::span(&q, 1), std::span(&out, 1), method);
  return out;
}

double KdeModel::ppf(double p) const {
  double out;
  ppf(std::span(&p, 1), std::span(&out, 1));
  return out;
}

double KdeModel::pdf(double q) const {
  double out;
  pdf(std::span(&q, 1), std::span(&out, 1));
  return out;
}

KdeModel fit_kde(std::span<const double> samples, const KdeOptions& options) {
  if (samples.empty()) throw domain_error("kernel density needs at least one sample");
  require_finite(samples, "sample");
  const double bandwidth =
      options.bandwidth ? *options.bandwidth : silverman_bandwidth(samples);
  if (!(bandwidth > 0.0)) throw domain_error("bandwidth must be positive");
  return KdeModel(std::vector<double>(samples.begin(), samples.end()), bandwidth,
                  options.grid_density.value_or(default_grid_density),
                  options.cdf_method.value_or(CdfMethod::fast));
}

}  // namespace redist
