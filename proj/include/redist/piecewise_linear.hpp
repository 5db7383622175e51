#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace redist {

// Continuous piecewise-linear map through knots (x[i], y[i]) with x strictly
// increasing and y strictly increasing, so the map is invertible. Outside the
// knot range both directions clamp to the end values. Evaluation at a knot
// returns the paired knot value exactly.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> x, std::vector<double> y);

  double forward(double q) const { return eval(x_, y_, x_index_, q); }
  double inverse(double p) const { return eval(y_, x_, y_index_, p); }

  // Index j of the segment [x[j], x[j+1]) holding q, clamped to the ends.
  std::size_t segment(double q) const { return locate(x_, x_index_, q); }

  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }
  std::size_t size() const { return x_.size(); }

 private:
  // Cached affine guess for knot lookup when knots are (nearly) equispaced.
  struct Index {
    double origin = 0.0;
    double inv_step = 0.0;
    bool uniform = false;
  };

  static Index build_index(std::span<const double> knots);
  static std::size_t locate(std::span<const double> knots, const Index& index,
                            double q);
  static double eval(std::span<const double> from, std::span<const double> to,
                     const Index& index, double q);

  std::vector<double> x_;
  std::vector<double> y_;
  Index x_index_;
  Index y_index_;
};

}  // namespace redist
