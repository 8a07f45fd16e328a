#pragma once

#include "zk/fourier.hpp"
#include "zk/types.hpp"

namespace zk {

/// Periodic field snapshot of d_t u + d_x Laplace u + d_x u^2 = 0.
/// Real-valuedness is structural: the state is held in the r2c half
/// spectrum, which is Hermitian by construction.
struct SimState {
  PeriodicBox box;
  Vector u;
  double t = 0.0;
};

struct ConservedQuantities {
  double mass = 0.0;      // int u^2
  double energy = 0.0;    // 1/2 int |grad u|^2 - 1/3 int u^3
  double integral = 0.0;  // int u (box integral of the x-line invariant)
};
ConservedQuantities conserved(const SimState& state, FourierWorkspace& ws);

/// Advection-type step bound for the explicitly treated nonlinear term:
/// dt <= C_rk4 / (2 sup|u| * kx_cut) with C_rk4 = 2.8 (imaginary-axis
/// stability of the underlying RK4 tableau) and kx_cut the largest
/// dealiased x wavenumber.  The dispersive linear part is integrated
/// exactly and imposes no constraint.
double stability_max_dt(const PeriodicBox& box, double sup_u);

/// Fourth-order exponential time differencing (ETDRK4) with exact linear
/// propagation of the dispersion symbol i kx |k|^2 and 2/3-rule dealiasing
/// of the quadratic term.  phi-function coefficients are evaluated by
/// contour averaging, so small symbols are well conditioned.
class ZkStepper {
 public:
  explicit ZkStepper(const PeriodicBox& box, double blowup_bound = 50.0);

  /// Single-step contract: transforms in, steps, transforms out.
  /// Throws config_error when dt violates the stability bound and
  /// solver_error (with t and sup|u| in the message) on blow-up.
  SimState step(const SimState& state, double dt);

  /// Efficient multi-step interface keeping the spectral state resident.
  void load(const SimState& state);
  void advance(int steps, double dt);
  SimState snapshot();
  double time() const { return t_; }
  double last_sup() const { return last_sup_; }
  /// Current spectrum (dealiased); exposed for diagnostics.
  const VectorC& spectrum() const { return vhat_; }
  FourierWorkspace& workspace() { return ws_; }

 private:
  void ensure_coeffs(double dt);
  VectorC nonlinear(const VectorC& vhat);

  PeriodicBox box_;
  FourierWorkspace ws_;
  VectorC vhat_;
  double t_ = 0.0;
  double blowup_bound_;
  double last_sup_ = 0.0;

  double coeff_dt_ = -1.0;
  VectorC E_, E2_, Qc_, f1_, f2_, f3_;
  VectorC lin_;  // dispersion symbol i kx |k|^2
};

}  // namespace zk
