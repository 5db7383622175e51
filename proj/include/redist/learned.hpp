#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "redist/piecewise_linear.hpp"

namespace redist {

// Default cap on the number of lattice points taken from the samples.
inline constexpr std::size_t default_max_bins = 5000;

// Paired lattice: probabilities lp (ascending, inside (0, 1)) and data
// values lv (ascending). Optional support boundaries a <= lv.front() and
// b >= lv.back() extend the map linearly to probability 0 and 1.
struct LatticeInterpolant {
  std::vector<double> lp;
  std::vector<double> lv;
  std::optional<double> a;
  std::optional<double> b;

  // 1/(K+1) for a fitted lattice: the mass left below the sample minimum.
  double delta() const { return lp.front(); }
};

// Returns a strictly increasing copy of the ascending array `sorted` in which
// every run of duplicates has been spread by uniform noise of at most
// `magnitude`, never reaching halfway to a neighbouring distinct value. The
// first and last elements are left untouched.
std::vector<double> make_unique(std::span<const double> sorted,
                                double magnitude, std::uint64_t seed);

// Same repair for an array in arbitrary order: duplicates are broken in
// place and the relative order of distinct values is preserved.
void make_unique_unordered(std::span<double> values, double magnitude,
                           std::uint64_t seed);

// Continuous, invertible piecewise-linear CDF/PPF estimated from samples.
// Immutable after construction; all evaluation is pure.
class LearnedDistribution {
 public:
  // Throws domain_error unless lp, lv are strictly increasing, equally long
  // (>= 2), lp lies inside (0, 1) and the boundaries enclose lv.
  LearnedDistribution(LatticeInterpolant lattice, std::size_t n_fit);

  // Below the minimum: linear from (a, 0) when a is set, the constant
  // delta otherwise (q < a throws). Symmetric above the maximum.
  void cdf(std::span<const double> q, std::span<double> out) const;
  void ppf(std::span<const double> p, std::span<double> out) const;
  // Slope of the cdf; at an interior knot the mean of the adjacent slopes.
  // Zero where the cdf is flat.
  void pdf(std::span<const double> q, std::span<double> out) const;
  std::vector<double> rvs(std::size_t n, std::uint64_t seed) const;

  double cdf(double q) const;
  double ppf(double p) const;
  double pdf(double q) const;

  // [a or min, b or max]
  std::pair<double, double> support() const;

  const LatticeInterpolant& lattice() const { return lattice_; }
  std::size_t bins() const { return lattice_.lp.size(); }
  std::size_t n_fit() const { return n_fit_; }
  double delta() const { return lattice_.delta(); }
  const PiecewiseLinear& map() const { return map_; }

 private:
  void check_cdf_domain(std::span<const double> q) const;
  double pdf_unchecked(double q) const;

  LatticeInterpolant lattice_;
  std::size_t n_fit_;
  PiecewiseLinear map_;
  std::vector<double> slopes_;
};

struct LearnedOptions {
  std::optional<double> a;
  std::optional<double> b;
  // Number of lattice points K; defaults to min(5000, n).
  std::optional<std::size_t> bins;
  // When false the samples buffer may be reordered in place.
  bool keep_input_order = true;
  // Seeds the duplicate repair of lattice values.
  std::uint64_t seed = 0;
};

// Fits the lattice lp[k] = (k+1)/(K+1), lv[k] = order statistic at index
// ceil((k+1) n/(K+1)) - 1 with the endpoints forced to the sample minimum and
// maximum. The order statistics come from a multi-target selection
// (O(N log K)); already sorted input is detected and read directly.
LearnedDistribution fit_learned(std::span<double> samples,
                                const LearnedOptions& options = {});

// Sample ranks used for the K lattice values of n samples.
std::vector<std::size_t> lattice_ranks(std::size_t n, std::size_t bins);

}  // namespace redist
