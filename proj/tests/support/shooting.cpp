#include "shooting.hpp"

#include <cmath>

namespace zktest {

namespace {

struct State {
  double R, dR;
};

// Outcome of integrating from the origin with amplitude A:
//  +1 -> R crossed zero (A too large), -1 -> R turned upward while positive
//  (A too small).
int classify(int p, double A, double r_end, double h) {
  auto f = [p](double r, const State& s) {
    const double nl = std::pow(std::abs(s.R), p - 1) * s.R;
    return State{s.dR, -2.0 / r * s.dR + s.R - nl};
  };
  // Series start: R = A + R2 r^2 + R4 r^4 near r = 0.
  const double R2 = (A - std::pow(A, p)) / 6.0;
  const double R4 = R2 * (1.0 - p * std::pow(A, p - 1)) / 20.0;
  double r = h;
  State s{A + R2 * r * r + R4 * r * r * r * r, 2.0 * R2 * r + 4.0 * R4 * r * r * r};
  while (r < r_end) {
    const State k1 = f(r, s);
    const State k2 = f(r + h / 2, {s.R + h / 2 * k1.R, s.dR + h / 2 * k1.dR});
    const State k3 = f(r + h / 2, {s.R + h / 2 * k2.R, s.dR + h / 2 * k2.dR});
    const State k4 = f(r + h, {s.R + h * k3.R, s.dR + h * k3.dR});
    s.R += h / 6 * (k1.R + 2 * k2.R + 2 * k3.R + k4.R);
    s.dR += h / 6 * (k1.dR + 2 * k2.dR + 2 * k3.dR + k4.dR);
    r += h;
    if (s.R < 0.0) return +1;
    if (s.dR > 0.0 && s.R > 0.0) return -1;
  }
  // Undecided at r_end: the growing mode has R' ~ +R, the decaying one
  // R' ~ -R; classify by the drift direction.
  return (s.dR + s.R > 0.0) ? -1 : +1;
}

}  // namespace

ShootingResult shoot_ground_state(int p, double r_end, double step, double lo, double hi) {
  int n = 0;
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (classify(p, mid, r_end, step) > 0)
      hi = mid;
    else
      lo = mid;
    ++n;
  }
  return {0.5 * (lo + hi), n};
}

}  // namespace zktest
