#pragma once

namespace redist::normal_math {

inline constexpr double inv_sqrt_2pi = 0.39894228040143267794;

// Standard normal helpers shared by the analytic family and the KDE.
double pdf(double z);
double cdf(double z);
// Wichura's AS241 (PPND16); relative accuracy about 1e-16 on (0, 1).
// Returns -inf / +inf at 0 / 1.
double ppf(double p);

}  // namespace redist::normal_math
