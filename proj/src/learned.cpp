#include "redist/learned.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "redist/error.hpp"
#include "redist/kernels.hpp"
#include "redist/parallel.hpp"
#include "redist/rng.hpp"
#include "redist/validate.hpp"

namespace redist {
namespace {

constexpr int max_noise_attempts = 8;

// Places the order statistics of every rank in `ranks` (ascending, relative
// to data.begin() + offset) at their sorted positions.
void select_ranks(std::span<double> data, std::span<const std::size_t> ranks,
                  std::size_t offset) {
  if (ranks.empty() || data.empty()) return;
  // Dense rank sets are cheaper to satisfy with a full sort of the range.
  if (ranks.size() * 8 >= data.size()) {
    std::sort(data.begin(), data.end());
    return;
  }
  const std::size_t mid = ranks.size() / 2;
  const std::size_t pivot = ranks[mid] - offset;
  std::nth_element(data.begin(), data.begin() + static_cast<long>(pivot),
                   data.end());
  select_ranks(data.first(pivot), ranks.first(mid), offset);
  select_ranks(data.subspan(pivot + 1), ranks.subspan(mid + 1),
               offset + pivot + 1);
}

}  // namespace

std::vector<double> make_unique(std::span<const double> sorted,
                                double magnitude, std::uint64_t seed) {
  const std::size_t n = sorted.size();
  if (n < 2) throw domain_error("make_unique requires at least two values");
  require_finite(sorted, "make_unique input");
  for (std::size_t i = 1; i < n; ++i) {
    if (sorted[i] < sorted[i - 1])
      throw element_error(i, sorted[i], "make_unique input is not sorted");
  }

  std::vector<double> out(sorted.begin(), sorted.end());
  Rng rng(seed);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && sorted[j] == sorted[i]) ++j;
    if (j - i < 2) {
      i = j;
      continue;
    }
    if (i == 0 && j == n)
      throw domain_error(
          "cannot make values unique: minimum equals maximum (point mass)");
    if (!(magnitude > 0.0))
      throw domain_error(
          "cannot make values unique: duplicates present and noise magnitude is 0");

    const double v = sorted[i];
    double reach = magnitude;
    if (i > 0) reach = std::min(reach, 0.5 * (v - sorted[i - 1]));
    if (j < n) reach = std::min(reach, 0.5 * (sorted[j] - v));
    const bool pin_low = i == 0;
    const bool pin_high = j == n;
    const double lo = pin_low ? v : v - reach;
    const double hi = pin_high ? v : v + reach;
    const std::size_t first = i + (pin_low ? 1 : 0);
    const std::size_t last = j - (pin_high ? 1 : 0);

    bool distinct = false;
    for (int attempt = 0; attempt < max_noise_attempts && !distinct; ++attempt) {
      for (std::size_t k = first; k < last; ++k)
        out[k] = lo + (hi - lo) * rng.uniform();
      std::sort(out.begin() + static_cast<long>(first),
                out.begin() + static_cast<long>(last));
      distinct = true;
      for (std::size_t k = std::max<std::size_t>(first, 1); k <= last && k < n;
           ++k) {
        if (!(out[k] > out[k - 1])) distinct = false;
      }
    }
    if (!distinct)
      throw domain_error(
          "cannot make values unique: noise magnitude below floating-point "
          "resolution");
    i = j;
  }
  return out;
}

void make_unique_unordered(std::span<double> values, double magnitude,
                           std::uint64_t seed) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
  std::vector<double> sorted(values.size());
  for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = values[order[k]];
  const std::vector<double> unique = make_unique(sorted, magnitude, seed);
  for (std::size_t k = 0; k < order.size(); ++k) values[order[k]] = unique[k];
}

LearnedDistribution::LearnedDistribution(LatticeInterpolant lattice,
                                         std::size_t n_fit)
    : lattice_(std::move(lattice)), n_fit_(n_fit) {
  const auto& lp = lattice_.lp;
  const auto& lv = lattice_.lv;
  if (lp.size() != lv.size() || lp.size() < 2)
    throw domain_error("lattice needs at least two paired points");
  require_finite(lp, "lattice point");
  require_finite(lv, "lattice value");
  if (!(lp.front() > 0.0 && lp.back() < 1.0))
    throw domain_error("lattice points must lie strictly inside (0, 1)");
  if (lattice_.a && !(std::isfinite(*lattice_.a) && *lattice_.a <= lv.front()))
    throw domain_error("left boundary a must not exceed the sample minimum");
  if (lattice_.b && !(std::isfinite(*lattice_.b) && *lattice_.b >= lv.back()))
    throw domain_error("right boundary b must not be below the sample maximum");

  std::vector<double> x;
  std::vector<double> y;
  x.reserve(lv.size() + 2);
  y.reserve(lv.size() + 2);
  // A boundary equal to the extreme sample adds no segment.
  if (lattice_.a && *lattice_.a < lv.front()) {
    x.push_back(*lattice_.a);
    y.push_back(0.0);
  }
  x.insert(x.end(), lv.begin(), lv.end());
  y.insert(y.end(), lp.begin(), lp.end());
  if (lattice_.b && *lattice_.b > lv.back()) {
    x.push_back(*lattice_.b);
    y.push_back(1.0);
  }
  map_ = PiecewiseLinear(std::move(x), std::move(y));

  const auto kx = map_.x();
  const auto ky = map_.y();
  slopes_.resize(kx.size() - 1);
  for (std::size_t j = 0; j + 1 < kx.size(); ++j)
    slopes_[j] = (ky[j + 1] - ky[j]) / (kx[j + 1] - kx[j]);
}

std::pair<double, double> LearnedDistribution::support() const {
  return {lattice_.a.value_or(lattice_.lv.front()),
          lattice_.b.value_or(lattice_.lv.back())};
}

void LearnedDistribution::check_cdf_domain(std::span<const double> q) const {
  require_finite(q, "cdf input");
  if (lattice_.a) require_at_least(q, *lattice_.a, "input below left boundary a");
  if (lattice_.b) require_at_most(q, *lattice_.b, "input above right boundary b");
}

void LearnedDistribution::cdf(std::span<const double> q,
                              std::span<double> out) const {
  check_cdf_domain(q);
  kernels::interpolate(map_, kernels::Direction::forward, q, out);
}

void LearnedDistribution::ppf(std::span<const double> p,
                              std::span<double> out) const {
  require_probabilities(p);
  kernels::interpolate(map_, kernels::Direction::inverse, p, out);
}

double LearnedDistribution::pdf_unchecked(double q) const {
  const auto kx = map_.x();
  if (q < kx.front() || q > kx.back()) return 0.0;
  const std::size_t j = map_.segment(q);
  if (q == kx[j] && j > 0) return 0.5 * (slopes_[j - 1] + slopes_[j]);
  return slopes_[j];
}

void LearnedDistribution::pdf(std::span<const double> q,
                              std::span<double> out) const {
  check_cdf_domain(q);
  parallel::map_elements(q, out, [this](double v) { return pdf_unchecked(v); });
}

std::vector<double> LearnedDistribution::rvs(std::size_t n,
                                             std::uint64_t seed) const {
  if (n == 0) throw domain_error("rvs requires n >= 1");
  const auto ky = map_.y();
  const double lo = ky.front();
  const double hi = ky.back();
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = map_.inverse(lo + (hi - lo) * rng.uniform());
  return out;
}

double LearnedDistribution::cdf(double q) const {
  double out;
  cdf(std::span(&q, 1), std::span(&out, 1));
  return out;
}

double LearnedDistribution::ppf(double p) const {
  double out;
  ppf(std::span(&p, 1), std::span(&out, 1));
  return out;
}

double LearnedDistribution::pdf(double q) const {
  double out;
  pdf(std::span(&q, 1), std::span(&out, 1));
  return out;
}

std::vector<std::size_t> lattice_ranks(std::size_t n, std::size_t bins) {
  std::vector<std::size_t> ranks(bins);
  const std::uint64_t denom = bins + 1;
  for (std::size_t k = 0; k < bins; ++k) {
    // ceil((k+1) n / (K+1)) - 1
    ranks[k] = static_cast<std::size_t>(
        ((k + 1) * static_cast<std::uint64_t>(n) + denom - 1) / denom - 1);
  }
  ranks.front() = 0;
  ranks.back() = n - 1;
  return ranks;
}

LearnedDistribution fit_learned(std::span<double> samples,
                                const LearnedOptions& options) {
  const std::size_t n = samples.size();
  if (n < 2) throw domain_error("degenerate data: fitting needs at least two samples, got " +
                       std::to_string(n));

  bool sorted = true;
  double lo = samples[0];
  double hi = samples[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double v = samples[i];
    if (!std::isfinite(v)) throw element_error(i, v, "non-finite sample");
    if (i > 0 && v < samples[i - 1]) sorted = false;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi)
    throw domain_error(
        "degenerate data: all samples are equal, no continuous CDF exists");
  if (options.a && !(*options.a <= lo))
    throw domain_error("left boundary a exceeds the sample minimum");
  if (options.b && !(*options.b >= hi))
    throw domain_error("right boundary b is below the sample maximum");

  const std::size_t bins = options.bins.value_or(std::min(default_max_bins, n));
  if (bins < 2) throw domain_error("bins must be at least 2");
  if (bins > n) throw domain_error("bins must not exceed the number of samples");

  const std::vector<std::size_t> ranks = lattice_ranks(n, bins);
  LatticeInterpolant lattice;
  lattice.a = options.a;
  lattice.b = options.b;
  lattice.lv.resize(bins);
  if (sorted) {
    for (std::size_t k = 0; k < bins; ++k) lattice.lv[k] = samples[ranks[k]];
  } else {
    std::vector<double> scratch;
    std::span<double> work = samples;
    if (options.keep_input_order) {
      scratch.assign(samples.begin(), samples.end());
      work = scratch;
    }
    select_ranks(work, ranks, 0);
    for (std::size_t k = 0; k < bins; ++k) lattice.lv[k] = work[ranks[k]];
  }

  double smallest_gap = std::numeric_limits<double>::infinity();
  bool repeated = false;
  for (std::size_t k = 1; k < bins; ++k) {
    const double gap = lattice.lv[k] - lattice.lv[k - 1];
    if (gap == 0.0)
      repeated = true;
    else
      smallest_gap = std::min(smallest_gap, gap);
  }
  if (repeated)
    lattice.lv = make_unique(lattice.lv, 0.5 * smallest_gap, options.seed);

  lattice.lp.resize(bins);
  const double denom = static_cast<double>(bins + 1);
  for (std::size_t k = 0; k < bins; ++k)
    lattice.lp[k] = static_cast<double>(k + 1) / denom;

  return LearnedDistribution(std::move(lattice), n);
}

}  // namespace redist
