#pragma once

#include "zk/types.hpp"

#include <iosfwd>
#include <string>

namespace zk {

/// 1D radial ground-state profile: the positive decreasing solution of
///   -R'' - (2/r) R' + R - |R|^{p-1} R = 0,  R'(0) = 0,  R(r_max) = 0,
/// discretized on a uniform grid r_i = i h, i = 0..n_r.
struct RadialProfile {
  int p = 2;
  double r_max = 0.0;
  Vector r;           // nodes, size n_r + 1
  Vector R;           // values, R[n_r] = 0
  double residual = 0.0;  // sup-norm of the discrete ODE residual
  double stab_factor = 0.0;  // Petviashvili S at exit; -> 1 on convergence
  int iterations = 0;
};

/// Renormalized (Petviashvili) fixed-point solve of the radial equation:
///   R <- S^gamma * Lr^{-1}(R^p),  S = <Lr R, R> / <R^p, R>,  gamma = p/(p-1),
/// with Lr = -d2/dr2 - (2/r) d/dr + 1, the r -> 0 row replaced by the
/// symmetric limit -3 d2/dr2 + 1, and a Dirichlet condition at r_max.
/// Seeded with a unit-height Gaussian.  Converged when both the sup-norm
/// residual and |S - 1| fall below tol.
///
/// fd_order selects the finite-difference order (2 or 4); rows touching
/// r = 0 use the even extension of R, the last interior row falls back to
/// second order.
///
/// Throws std::invalid_argument on bad inputs and solver_error on
/// non-convergence or collapse to the zero profile.
RadialProfile solve_radial(int p, double r_max, int n_r, double tol = 1e-10,
                           int max_iter = 500, int fd_order = 4);

/// Composite-trapezoid value of 4 pi * integral of R^2 r^2 dr.
double radial_mass(const RadialProfile& profile);

/// The two integral identities every converged p=2 profile must satisfy:
///   integral |grad Q|^2 = integral Q^2   and   integral Q^3 = 2 integral Q^2
/// with the 3D integrals reduced to 4 pi * integral (.) r^2 dr.  Integrals
/// use composite Simpson and a fourth-order derivative stencil so the
/// quadrature error stays far below the identity defect being measured.
struct PohozaevReport {
  double grad_sq = 0.0;  // 4 pi int R'^2 r^2 dr
  double mass = 0.0;     // 4 pi int R^2 r^2 dr
  double cubic = 0.0;    // 4 pi int R^3 r^2 dr
  double rel_grad_defect = 0.0;   // |grad_sq - mass| / mass
  double rel_cubic_defect = 0.0;  // |cubic - 2 mass| / (2 mass)
};
PohozaevReport pohozaev_report(const RadialProfile& profile);

/// Structural invariants of a converged profile.
struct ProfileCheck {
  bool positive_at_origin = false;
  bool strictly_decreasing = false;
  bool zero_at_rmax = false;
  bool flat_at_origin = false;   // one-sided derivative at 0 vanishes
  bool residual_below = false;
  bool exponential_tail = false; // R(r) <= R(r/2) e^{-r/4} on the outer half
  bool all() const {
    return positive_at_origin && strictly_decreasing && zero_at_rmax &&
           flat_at_origin && residual_below && exponential_tail;
  }
};
ProfileCheck check_profile(const RadialProfile& profile, double tol);

/// Two-column text serialization (r, R) with one header line recording
/// p, r_max, n_r, residual, iterations.  Values are written with 17
/// significant digits so the round trip is bit-stable.
void write_profile(std::ostream& os, const RadialProfile& profile);
void write_profile_file(const std::string& path, const RadialProfile& profile);
RadialProfile read_profile(std::istream& is);
RadialProfile read_profile_file(const std::string& path);

}  // namespace zk
