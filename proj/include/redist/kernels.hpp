#pragma once

#include <span>

#include "redist/piecewise_linear.hpp"

// Array kernels on the estimator hot path. The unqualified versions split the
// query array across OpenMP workers; the serial:: versions are the reference
// implementations they are tested against. Both produce bit-identical
// results because every output element is computed independently.
namespace redist::kernels {

enum class Direction { forward, inverse };

void interpolate(const PiecewiseLinear& map, Direction direction,
                 std::span<const double> q, std::span<double> out);

// (1/N) sum_i Phi((q - c_i) / h)
void mixture_cdf(std::span<const double> centers, double bandwidth,
                 std::span<const double> q, std::span<double> out);

// (1/(N h)) sum_i phi((q - c_i) / h)
void mixture_pdf(std::span<const double> centers, double bandwidth,
                 std::span<const double> q, std::span<double> out);

namespace serial {

void interpolate(const PiecewiseLinear& map, Direction direction,
                 std::span<const double> q, std::span<double> out);
void mixture_cdf(std::span<const double> centers, double bandwidth,
                 std::span<const double> q, std::span<double> out);
void mixture_pdf(std::span<const double> centers, double bandwidth,
                 std::span<const double> q, std::span<double> out);

}  // namespace serial
}  // namespace redist::kernels
