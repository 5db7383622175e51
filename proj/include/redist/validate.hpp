#pragma once

#include <span>
#include <string_view>

namespace redist {

// Throw element_error naming the first offending index.
void require_finite(std::span<const double> values, std::string_view what);
void require_probabilities(std::span<const double> p);
void require_at_least(std::span<const double> q, double lower,
                      std::string_view what);
void require_at_most(std::span<const double> q, double upper,
                     std::string_view what);

}  // namespace redist
