#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "redist/analytic.hpp"
#include "redist/kde.hpp"
#include "redist/learned.hpp"

namespace redist {

// Any of the supported families behind one cdf/ppf/pdf/rvs contract.
class Distribution {
 public:
  using Model = std::variant<AnalyticDistribution, LearnedDistribution, KdeModel>;

  Distribution(AnalyticDistribution d) : model_(std::move(d)) {}
  Distribution(LearnedDistribution d) : model_(std::move(d)) {}
  Distribution(KdeModel d) : model_(std::move(d)) {}

  void cdf(std::span<const double> q, std::span<double> out) const;
  void ppf(std::span<const double> p, std::span<double> out) const;
  void pdf(std::span<const double> q, std::span<double> out) const;

  std::vector<double> cdf(std::span<const double> q) const;
  std::vector<double> ppf(std::span<const double> p) const;
  std::vector<double> pdf(std::span<const double> q) const;
  std::vector<double> rvs(std::size_t n, std::uint64_t seed) const;

  double cdf(double q) const;
  double ppf(double p) const;
  double pdf(double q) const;

  // Closed interval where the density may be nonzero; infinite ends for
  // unbounded families (KDE included).
  std::pair<double, double> support() const;

  // "analytic", "learned" or "kde".
  std::string_view kind() const;

  const Model& model() const { return model_; }

 private:
  Model model_;
};

// Parses the command-line distribution grammar:
//   normal:MU,SIGMA  uniform:A,B  exponential:LAMBDA
//   learned:PATH     kde:PATH     (documents loaded from disk)
// Throws format_error listing the supported families on anything else.
Distribution parse_distribution(std::string_view spec);
AnalyticDistribution parse_analytic(std::string_view spec);

}  // namespace redist
