#include "redist/redistributor.hpp"

#include <cmath>

#include "redist/error.hpp"
#include "redist/validate.hpp"

namespace redist {

void Redistributor::transform(std::span<const double> x,
                              std::span<double> out) const {
  source_.cdf(x, out);
  target_.ppf(out, out);
}

void Redistributor::inverse_transform(std::span<const double> y,
                                      std::span<double> out) const {
  target_.cdf(y, out);
  source_.ppf(out, out);
}

void Redistributor::cdt(std::span<const double> x, std::span<double> out) const {
  require_finite(x, "cdt input");
  const auto [lo, hi] = source_.support();
  require_at_least(x, lo, "cdt input below the source support");
  require_at_most(x, hi, "cdt input above the source support");
  std::vector<double> density(x.size());
  source_.pdf(x, density);
  transform(x, out);
  const long n = static_cast<long>(x.size());
  for (long i = 0; i < n; ++i) out[i] = (out[i] - x[i]) * std::sqrt(density[i]);
}

std::vector<double> Redistributor::transform(std::span<const double> x) const {
  std::vector<double> out(x.size());
  transform(x, out);
  return out;
}

std::vector<double> Redistributor::inverse_transform(
    std::span<const double> y) const {
  std::vector<double> out(y.size());
  inverse_transform(y, out);
  return out;
}

std::vector<double> Redistributor::cdt(std::span<const double> x) const {
  std::vector<double> out(x.size());
  cdt(x, out);
  return out;
}

}  // namespace redist
