#pragma once

#include "zk/types.hpp"

namespace zk {

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson
/// slopes, the same construction as matlab's 'pchip').  Monotone data give
/// a monotone interpolant with no overshoot.
class PchipInterpolant {
 public:
  PchipInterpolant() = default;
  /// x strictly increasing, at least 2 points.
  PchipInterpolant(Vector x, Vector y);

  /// Evaluate at t.  Throws std::domain_error outside [x_front, x_back];
  /// extrapolation is never allowed.
  double operator()(double t) const;
  /// Derivative of the interpolant at t (C^1 across knots).
  double derivative(double t) const;

  double x_front() const { return x_[0]; }
  double x_back() const { return x_[x_.size() - 1]; }

 private:
  int find_interval(double t) const;
  Vector x_, y_, m_;  // knots, values, node slopes
};

}  // namespace zk
