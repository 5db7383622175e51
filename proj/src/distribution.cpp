#include "redist/distribution.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "redist/error.hpp"
#include "redist/serialization.hpp"

namespace redist {
namespace {

constexpr std::string_view supported =
    "supported: normal:MU,SIGMA, uniform:A,B, exponential:LAMBDA, "
    "learned:PATH, kde:PATH";

[[noreturn]] void bad_spec(std::string_view spec, std::string_view why) {
  throw format_error("invalid distribution '" + std::string(spec) + "': " +
                     std::string(why) + " (" + std::string(supported) + ")");
}

std::vector<double> parse_reals(std::string_view spec, std::string_view args,
                                std::size_t expected) {
  std::vector<double> values;
  while (true) {
    const std::size_t comma = args.find(',');
    const std::string_view token = args.substr(0, comma);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size() ||
        !std::isfinite(v))
      bad_spec(spec, "malformed number '" + std::string(token) + "'");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  if (values.size() != expected)
    bad_spec(spec, "expected " + std::to_string(expected) + " parameter(s)");
  return values;
}

}  // namespace

void Distribution::cdf(std::span<const double> q, std::span<double> out) const {
  std::visit([&](const auto& d) { d.cdf(q, out); }, model_);
}

void Distribution::ppf(std::span<const double> p, std::span<double> out) const {
  std::visit([&](const auto& d) { d.ppf(p, out); }, model_);
}

void Distribution::pdf(std::span<const double> q, std::span<double> out) const {
  std::visit([&](const auto& d) { d.pdf(q, out); }, model_);
}

std::vector<double> Distribution::cdf(std::span<const double> q) const {
  std::vector<double> out(q.size());
  cdf(q, out);
  return out;
}

std::vector<double> Distribution::ppf(std::span<const double> p) const {
  std::vector<double> out(p.size());
  ppf(p, out);
  return out;
}

std::vector<double> Distribution::pdf(std::span<const double> q) const {
  std::vector<double> out(q.size());
  pdf(q, out);
  return out;
}

std::vector<double> Distribution::rvs(std::size_t n, std::uint64_t seed) const {
  return std::visit([&](const auto& d) { return d.rvs(n, seed); }, model_);
}

double Distribution::cdf(double q) const {
  return std::visit([&](const auto& d) { return d.cdf(q); }, model_);
}

double Distribution::ppf(double p) const {
  return std::visit([&](const auto& d) { return d.ppf(p); }, model_);
}

double Distribution::pdf(double q) const {
  return std::visit([&](const auto& d) { return d.pdf(q); }, model_);
}

std::pair<double, double> Distribution::support() const {
  if (const auto* a = std::get_if<AnalyticDistribution>(&model_)) return a->support();
  if (const auto* l = std::get_if<LearnedDistribution>(&model_)) return l->support();
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf};
}

std::string_view Distribution::kind() const {
  switch (model_.index()) {
    case 0:
      return "analytic";
    case 1:
      return "learned";
    default:
      return "kde";
  }
}

AnalyticDistribution parse_analytic(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) bad_spec(spec, "missing ':'");
  const std::string_view family = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  try {
    if (family == "normal") {
      const auto v = parse_reals(spec, args, 2);
      return AnalyticDistribution::normal(v[0], v[1]);
    }
    if (family == "uniform") {
      const auto v = parse_reals(spec, args, 2);
      return AnalyticDistribution::uniform(v[0], v[1]);
    }
    if (family == "exponential") {
      const auto v = parse_reals(spec, args, 1);
      return AnalyticDistribution::exponential(v[0]);
    }
  } catch (const domain_error& e) {
    bad_spec(spec, e.what());
  }
  bad_spec(spec, "unknown family '" + std::string(family) + "'");
}

Distribution parse_distribution(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) bad_spec(spec, "missing ':'");
  const std::string_view family = spec.substr(0, colon);
  const std::string path(spec.substr(colon + 1));
  if (family == "learned" || family == "kde") {
    if (path.empty()) bad_spec(spec, "missing path");
    Distribution d = load_distribution(path);
    if (d.kind() != family)
      throw format_error("document at '" + path + "' holds a " +
                         std::string(d.kind()) + " distribution, not " +
                         std::string(family));
    return d;
  }
  return parse_analytic(spec);
}

}  // namespace redist
