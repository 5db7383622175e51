#include "redist/analytic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "redist/detail/overloaded.hpp"
#include "redist/error.hpp"
#include "redist/normal_math.hpp"
#include "redist/parallel.hpp"
#include "redist/rng.hpp"
#include "redist/validate.hpp"

namespace redist {
namespace {

using detail::overloaded;

constexpr double inf = std::numeric_limits<double>::infinity();

}  // namespace

AnalyticDistribution::AnalyticDistribution(Family family)
    : family_(std::move(family)) {
  std::visit(
      overloaded{
          [](const Uniform& u) {
            if (!(std::isfinite(u.a) && std::isfinite(u.b) && u.a < u.b))
              throw domain_error("uniform distribution requires finite a < b");
          },
          [](const Normal& n) {
            if (!(std::isfinite(n.mu) && std::isfinite(n.sigma) && n.sigma > 0))
              throw domain_error("normal distribution requires sigma > 0");
          },
          [](const Exponential& e) {
            if (!(std::isfinite(e.lambda) && e.lambda > 0))
              throw domain_error("exponential distribution requires lambda > 0");
          },
      },
      family_);
}

double AnalyticDistribution::cdf_unchecked(double q) const {
  return std::visit(
      overloaded{
          [q](const Uniform& u) {
            if (q <= u.a) return 0.0;
            if (q >= u.b) return 1.0;
            return (q - u.a) / (u.b - u.a);
          },
          [q](const Normal& n) { return normal_math::cdf((q - n.mu) / n.sigma); },
          [q](const Exponential& e) {
            return q <= 0.0 ? 0.0 : -std::expm1(-e.lambda * q);
          },
      },
      family_);
}

double AnalyticDistribution::ppf_unchecked(double p) const {
  return std::visit(
      overloaded{
          [p](const Uniform& u) {
            if (p >= 1.0) return u.b;
            return u.a + p * (u.b - u.a);
          },
          [p](const Normal& n) { return n.mu + n.sigma * normal_math::ppf(p); },
          [p](const Exponential& e) { return -std::log1p(-p) / e.lambda; },
      },
      family_);
}

double AnalyticDistribution::pdf_unchecked(double q) const {
  return std::visit(
      overloaded{
          [q](const Uniform& u) {
            return (q < u.a || q > u.b) ? 0.0 : 1.0 / (u.b - u.a);
          },
          [q](const Normal& n) {
            return normal_math::pdf((q - n.mu) / n.sigma) / n.sigma;
          },
          [q](const Exponential& e) {
            return q < 0.0 ? 0.0 : e.lambda * std::exp(-e.lambda * q);
          },
      },
      family_);
}

void AnalyticDistribution::cdf(std::span<const double> q,
                               std::span<double> out) const {
  require_finite(q, "cdf input");
  parallel::map_elements(q, out, [this](double v) { return cdf_unchecked(v); });
}

void AnalyticDistribution::ppf(std::span<const double> p,
                               std::span<double> out) const {
  require_probabilities(p);
  const auto [lo, hi] = support();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if ((p[i] == 0.0 && std::isinf(lo)) || (p[i] == 1.0 && std::isinf(hi)))
      throw element_error(i, p[i], "ppf is infinite at this probability");
  }
  parallel::map_elements(p, out, [this](double v) { return ppf_unchecked(v); });
}

void AnalyticDistribution::pdf(std::span<const double> q,
                               std::span<double> out) const {
  require_finite(q, "pdf input");
  parallel::map_elements(q, out, [this](double v) { return pdf_unchecked(v); });
}

double AnalyticDistribution::cdf(double q) const {
  double out;
  cdf(std::span(&q, 1), std::span(&out, 1));
  return out;
}

double AnalyticDistribution::ppf(double p) const {
  double out;
  ppf(std::span(&p, 1), std::span(&out, 1));
  return out;
}

double AnalyticDistribution::pdf(double q) const {
  double out;
  pdf(std::span(&q, 1), std::span(&out, 1));
  return out;
}

std::vector<double> AnalyticDistribution::rvs(std::size_t n,
                                              std::uint64_t seed) const {
  if (n == 0) throw domain_error("rvs requires n >= 1");
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = ppf_unchecked(rng.uniform());
  return out;
}

std::pair<double, double> AnalyticDistribution::support() const {
  return std::visit(
      overloaded{
          [](const Uniform& u) { return std::pair{u.a, u.b}; },
          [](const Normal&) { return std::pair{-inf, inf}; },
          [](const Exponential&) { return std::pair{0.0, inf}; },
      },
      family_);
}

std::string AnalyticDistribution::spec() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(overloaded{
                 [&](const Uniform& u) { out << "uniform:" << u.a << ',' << u.b; },
                 [&](const Normal& n) {
                   out << "normal:" << n.mu << ',' << n.sigma;
                 },
                 [&](const Exponential& e) { out << "exponential:" << e.lambda; },
             },
             family_);
  return out.str();
}

}  // namespace redist
