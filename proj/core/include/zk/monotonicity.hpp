#pragma once

#include "zk/evolution.hpp"
#include "zk/fourier.hpp"
#include "zk/types.hpp"

namespace zk {

/// Configuration of the weighted-mass functionals
///   I_+/- = int phi_+/-( cos(theta) (x - r + lambda (t - t0))
///                        + sin(theta) sqrt(1 + y^2 + z^2) ) u^2(x + a(t)) dx
/// with phi_+(s) = (2/pi) arctan(e^{s/K}) increasing from 0 to 1 and
/// phi_- its mirror.  Constraints: 0 <= theta <= pi/3 - delta,
/// delta <= lambda <= 1 - delta, K >= 4/delta.
struct MonotonicityParams {
  double theta = 0.0;
  double r = 5.0;
  double t0 = 0.0;
  double lambda = 0.5;
  double K = 8.0;
  double delta = 0.5;
};

struct MonotonicitySample {
  double t = 0.0;
  MonotonicityParams params;
  double I_plus = 0.0;
  double I_minus = 0.0;
  /// False when the recentered field is not negligible at the box boundary,
  /// i.e. the periodic surrogate of the whole-space functional is invalid.
  bool valid = true;
};

MonotonicitySample monotonicity(const SimState& state, const Double3& a_t,
                                const MonotonicityParams& params, FourierWorkspace& ws);

}  // namespace zk
