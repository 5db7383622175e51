#include "redist/validate.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "redist/error.hpp"

namespace redist {
namespace {

std::string describe(std::size_t index, double value, std::string_view what) {
  std::ostringstream out;
  out.precision(17);
  out << what << " at index " << index << " (value " << value << ")";
  return out.str();
}

}  // namespace

element_error::element_error(std::size_t index, double value,
                             const std::string& what)
    : domain_error(describe(index, value, what)),
      index_(index),
      value_(value),
      reason_(what) {}

void require_finite(std::span<const double> values, std::string_view what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw element_error(i, values[i], std::string("non-finite ") += what);
  }
}

void require_probabilities(std::span<const double> p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0))
      throw element_error(i, p[i], "probability outside [0, 1]");
  }
}

void require_at_least(std::span<const double> q, double lower,
                      std::string_view what) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] < lower) throw element_error(i, q[i], std::string(what));
  }
}

void require_at_most(std::span<const double> q, double upper,
                     std::string_view what) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] > upper) throw element_error(i, q[i], std::string(what));
  }
}

}  // namespace redist
