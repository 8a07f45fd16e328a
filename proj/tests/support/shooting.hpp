#pragma once

// Test-only oracle for the radial ground state: bisection shooting on R(0),
// integrating R'' = -(2/r) R' + R - |R|^{p-1} R outward with fixed-step RK4.
// Independent of the production solver (no shared discretization).

namespace zktest {

struct ShootingResult {
  double R0;       // shooting amplitude of the decaying solution
  int bisections;
};

ShootingResult shoot_ground_state(int p, double r_end = 25.0, double step = 1e-3,
                                  double lo = 1.0, double hi = 8.0);

}  // namespace zktest
