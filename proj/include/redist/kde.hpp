#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "redist/piecewise_linear.hpp"

namespace redist {

enum class CdfMethod { precise, fast };

inline constexpr std::size_t default_grid_density = 2048;
// Half-width of the empirical support beyond the extreme samples, in
// bandwidths. Phi(-6) ~ 1e-9.
inline constexpr double support_bandwidths = 6.0;

// Gaussian kernel density estimate: an equal-weight mixture of N(c_i, h^2).
// The precise cdf sums the mixture directly; the fast cdf and the ppf
// interpolate a grid of precise cdf values over the empirical support.
class KdeModel {
 public:
  KdeModel(std::vector<double> centers, double bandwidth,
           std::size_t grid_density = default_grid_density,
           CdfMethod method = CdfMethod::fast);

  // Uses the model's default method unless one is given.
  void cdf(std::span<const double> q, std::span<double> out,
           std::optional<CdfMethod> method = std::nullopt) const;
  // Inverse of the fast cdf; probabilities beyond the grid clamp to the
  // empirical support.
  void ppf(std::span<const double> p, std::span<double> out) const;
  void pdf(std::span<const double> q, std::span<double> out) const;
  // Exact mixture sampling: a uniformly chosen center plus N(0, h^2) noise.
  std::vector<double> rvs(std::size_t n, std::uint64_t seed) const;

  double cdf(double q, std::optional<CdfMethod> method = std::nullopt) const;
  double ppf(double p) const;
  double pdf(double q) const;

  // [min - 6h, max + 6h]
  std::pair<double, double> empirical_support() const { return support_; }

  std::span<const double> centers() const { return centers_; }
  double bandwidth() const { return bandwidth_; }
  std::size_t grid_density() const { return grid_density_; }
  CdfMethod cdf_method() const { return method_; }
  const PiecewiseLinear& grid() const { return grid_; }

 private:
  std::vector<double> centers_;
  double bandwidth_;
  std::size_t grid_density_;
  CdfMethod method_;
  std::pair<double, double> support_;
  PiecewiseLinear grid_;
};

struct KdeOptions {
  std::optional<double> bandwidth;
  std::optional<std::size_t> grid_density;
  std::optional<CdfMethod> cdf_method;
};

// Silverman's rule 0.9 min(sd, IQR/1.34) N^(-1/5), floored at 1e-12 * range.
double silverman_bandwidth(std::span<const double> samples);

KdeModel fit_kde(std::span<const double> samples, const KdeOptions& options = {});

}  // namespace redist
