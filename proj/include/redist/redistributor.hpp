#pragma once

#include <span>
#include <vector>

#include "redist/distribution.hpp"

namespace redist {

// R = F_T^-1 o F_S for a (source, target) pair. Immutable; the transforms are
// pure and chunk-parallel over the input. Inputs outside a distribution's
// domain raise that distribution's errors; no extra clamping happens here.
class Redistributor {
 public:
  Redistributor(Distribution source, Distribution target)
      : source_(std::move(source)), target_(std::move(target)) {}

  // target.ppf(source.cdf(x)); `out` may alias `x`.
  void transform(std::span<const double> x, std::span<double> out) const;
  // source.ppf(target.cdf(y)); `out` may alias `y`.
  void inverse_transform(std::span<const double> y, std::span<double> out) const;
  // Cumulative distribution transform (R(x) - x) sqrt(f_S(x)); x must lie
  // in the source support. `out` must not alias `x`.
  void cdt(std::span<const double> x, std::span<double> out) const;

  std::vector<double> transform(std::span<const double> x) const;
  std::vector<double> inverse_transform(std::span<const double> y) const;
  std::vector<double> cdt(std::span<const double> x) const;

  const Distribution& source() const { return source_; }
  const Distribution& target() const { return target_; }

 private:
  Distribution source_;
  Distribution target_;
};

}  // namespace redist
