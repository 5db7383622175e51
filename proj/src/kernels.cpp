#include "redist/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "redist/error.hpp"
#include "redist/normal_math.hpp"
#include "redist/parallel.hpp"

namespace redist {

PiecewiseLinear::PiecewiseLinear(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 2)
    throw domain_error("piecewise-linear map needs at least two paired knots");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1]) || !(y_[i] > y_[i - 1]))
      throw domain_error("piecewise-linear knots must be strictly increasing");
  }
  x_index_ = build_index(x_);
  y_index_ = build_index(y_);
}

PiecewiseLinear::Index PiecewiseLinear::build_index(
    std::span<const double> knots) {
  Index index;
  const std::size_t segments = knots.size() - 1;
  const double step =
      (knots.back() - knots.front()) / static_cast<double>(segments);
  if (!(step > 0.0) || !std::isfinite(step)) return index;
  // Equispaced if every knot sits within a quarter step of its ideal
  // position; then the affine guess is off by at most one segment.
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const double ideal = knots.front() + static_cast<double>(i) * step;
    if (std::fabs(knots[i] - ideal) > 0.25 * step) return index;
  }
  index.origin = knots.front();
  index.inv_step = 1.0 / step;
  index.uniform = true;
  return index;
}

std::size_t PiecewiseLinear::locate(std::span<const double> knots,
                                    const Index& index, double q) {
  const std::size_t last = knots.size() - 2;
  if (index.uniform) {
    const double guess = (q - index.origin) * index.inv_step;
    std::size_t j = 0;
    if (guess >= static_cast<double>(last))
      j = last;
    else if (guess > 0.0)
      j = static_cast<std::size_t>(guess);
    while (j > 0 && q < knots[j]) --j;
    while (j < last && q >= knots[j + 1]) ++j;
    return j;
  }
  const auto it = std::upper_bound(knots.begin() + 1, knots.end() - 1, q);
  return static_cast<std::size_t>(it - knots.begin()) - 1;
}

double PiecewiseLinear::eval(std::span<const double> from,
                             std::span<const double> to, const Index& index,
                             double q) {
  if (q <= from.front()) return to.front();
  if (q >= from.back()) return to.back();
  const std::size_t j = locate(from, index, q);
  if (q == from[j]) return to[j];
  const double t = (q - from[j]) / (from[j + 1] - from[j]);
  return to[j] + t * (to[j + 1] - to[j]);
}

namespace kernels {
namespace {

double mixture_cdf_at(std::span<const double> centers, double bandwidth,
                      double q) {
  const double scale = M_SQRT1_2 / bandwidth;
  double sum = 0.0;
  for (const double c : centers) sum += std::erfc((c - q) * scale);
  return 0.5 * sum / static_cast<double>(centers.size());
}

double mixture_pdf_at(std::span<const double> centers, double bandwidth,
                      double q) {
  const double inv_h = 1.0 / bandwidth;
  double sum = 0.0;
  for (const double c : centers) {
    const double z = (q - c) * inv_h;
    sum += std::exp(-0.5 * z * z);
  }
  return normal_math::inv_sqrt_2pi * inv_h * sum /
         static_cast<double>(centers.size());
}

bool run_parallel(std::size_t n) {
  return n >= parallel::min_parallel_length && parallel::worker_count() > 1;
}

}  // namespace

namespace serial {

void interpolate(const PiecewiseLinear& map, Direction direction,
                 std::span<const double> q, std::span<double> out) {
  assert(q.size() == out.size());
  if (direction == Direction::forward) {
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = map.forward(q[i]);
  } else {
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = map.inverse(q[i]);
  }
}

void mixture_cdf(std::span<const double> centers, double bandwidth,
                 std::span<const double> q, std::span<double> out) {
  assert(q.size() == out.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    out[i] = mixture_cdf_at(centers, bandwidth, q[i]);
}

void mixture_pdf(std::span<const double> centers, double bandwidth,
                 std::span<const double> q, std::span<double> out) {
  assert(q.size() == out.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    out[i] = mixture_pdf_at(centers, bandwidth, q[i]);
}

}  // namespace serial

void interpolate(const PiecewiseLinear& map, Direction direction,
                 std::span<const double> q, std::span<double> out) {
  assert(q.size() == out.size());
  if (!run_parallel(q.size())) return serial::interpolate(map, direction, q, out);
  const long n = static_cast<long>(q.size());
  if (direction == Direction::forward) {
#pragma omp parallel for schedule(static) num_threads(parallel::worker_count())
    for (long i = 0; i < n; ++i) out[i] = map.forward(q[i]);
  } else {
#pragma omp parallel for schedule(static) num_threads(parallel::worker_count())
    for (long i = 0; i < n; ++i) out[i] = map.inverse(q[i]);
  }
}

void mixture_cdf(std::span<const double> centers, double bandwidth,
                 std::span<const double> q, std::span<double> out) {
  assert(q.size() == out.size());
  // Work per element is O(N), so parallelize well below the usual threshold.
  if (q.size() * centers.size() < parallel::min_parallel_length ||
      parallel::worker_count() == 1)
    return serial::mixture_cdf(centers, bandwidth, q, out);
  const long n = static_cast<long>(q.size());
#pragma omp parallel for schedule(static) num_threads(parallel::worker_count())
  for (long i = 0; i < n; ++i)
    out[i] = mixture_cdf_at(centers, bandwidth, q[i]);
}

void mixture_pdf(std::span<const double> centers, double bandwidth,
                 std::span<const double> q, std::span<double> out) {
  assert(q.size() == out.size());
  if (q.size() * centers.size() < parallel::min_parallel_length ||
      parallel::worker_count() == 1)
    return serial::mixture_pdf(centers, bandwidth, q, out);
  const long n = static_cast<long>(q.size());
#pragma omp parallel for schedule(static) num_threads(parallel::worker_count())
  for (long i = 0; i < n; ++i)
    out[i] = mixture_pdf_at(centers, bandwidth, q[i]);
}

}  // namespace kernels
}  // namespace redist
