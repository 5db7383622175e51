#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace redist {

struct Uniform {
  double a;
  double b;
};

struct Normal {
  double mu;
  double sigma;
};

struct Exponential {
  double lambda;
};

// Closed-form distribution for one of the Family alternatives. Immutable;
// every method is pure and safe to call concurrently.
class AnalyticDistribution {
 public:
  using Family = std::variant<Uniform, Normal, Exponential>;

  explicit AnalyticDistribution(Family family);

  static AnalyticDistribution uniform(double a, double b) {
    return AnalyticDistribution(Uniform{a, b});
  }
  static AnalyticDistribution normal(double mu, double sigma) {
    return AnalyticDistribution(Normal{mu, sigma});
  }
  static AnalyticDistribution exponential(double lambda) {
    return AnalyticDistribution(Exponential{lambda});
  }

  // Uniform clamps to 0/1 outside [a, b]; non-finite inputs throw.
  void cdf(std::span<const double> q, std::span<double> out) const;
  // p must lie in [0, 1]; an endpoint on an unbounded side throws.
  void ppf(std::span<const double> p, std::span<double> out) const;
  void pdf(std::span<const double> q, std::span<double> out) const;
  // n draws of ppf(U), U uniform on (0, 1) from Rng(seed).
  std::vector<double> rvs(std::size_t n, std::uint64_t seed) const;

  double cdf(double q) const;
  double ppf(double p) const;
  double pdf(double q) const;

  // Closed support interval; infinite ends for unbounded sides.
  std::pair<double, double> support() const;

  // Mini-grammar form, e.g. "normal:0,1".
  std::string spec() const;

  const Family& family() const { return family_; }

 private:
  double cdf_unchecked(double q) const;
  double ppf_unchecked(double p) const;
  double pdf_unchecked(double q) const;

  Family family_;
};

}  // namespace redist
