#pragma once

#include "zk/evolution.hpp"
#include "zk/fourier.hpp"
#include "zk/groundstate.hpp"
#include "zk/radial.hpp"
#include "zk/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace zk {

/// The scaled/translated soliton family Q_{c,a}(x) = c^{-2} Q(c^{-1}(x-a))
/// sampled on a periodic box through the radial interpolant, with the
/// center taken modulo the torus (minimal-image distance).
class SolitonFamily {
 public:
  explicit SolitonFamily(const RadialProfile& profile);

  /// Q_{c,a} on the box grid.
  Vector sample(const PeriodicBox& box, double c, const Double3& a) const;
  /// Plain profile sample W(x) = Q(c^{-1}(x-a)) without the c^{-2} factor.
  Vector sample_profile(const PeriodicBox& box, double c, const Double3& a) const;
  /// Minimal-image displacement field components (x - a wrapped), one axis.
  static Vector displacement(const PeriodicBox& box, double a, int axis);

  double r_max() const { return r_max_; }

 private:
  PchipInterpolant R_;
  double r_max_;
};

enum class PerturbationKind { None, AmplitudeBump, SmoothNoise };

struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::None;
  double amplitude = 0.0;
  unsigned long long seed = 1;
};

/// Parse "none" | "amplitude-bump" | "smooth-noise"; anything else (e.g. a
/// multi-soliton request) is rejected -- this initializer builds single
/// solitons only.
PerturbationSpec perturbation_from_string(const std::string& kind, double amplitude,
                                          unsigned long long seed);

/// u0 = Q_{c0,a0} + perturbation.  Checks that the box is large enough for
/// the soliton tails (< 1e-8 of the peak on the boundary faces) and that
/// the radial profile covers the torus diameter.
SimState init_soliton(const PeriodicBox& box, const SolitonFamily& family, double c0,
                      const Double3& a0, const PerturbationSpec& pert);

/// Decomposition u = Q_{c,a} + (remainder) with the remainder orthogonal
/// (in the soliton frame) to Q^2 and to the three translation directions.
struct ModulationState {
  double t = 0.0;
  double c = 1.0;
  Double3 a{0.0, 0.0, 0.0};
  Vector eps;   // soliton-frame remainder on the box grid (interpolated)
  Vector eta;   // lab-frame remainder u - Q_{c,a} on the grid (exact)
  double b = 0.0;  // ||eps||_{L2}, computed exactly via the frame identity
  int newton_iters = 0;
  std::array<double, 4> ortho_residuals{};  // <eps, Q^2>, <eps, dQ/dx_j>, unit test vectors
};

struct DecomposeOptions {
  double tol = 1e-12;      // on the normalized orthogonality residuals
  int max_iter = 25;
  bool materialize_eps = true;  // build the soliton-frame eps field
};

/// Workspaces reused across repeated decompositions (the fine grid backs
/// the sub-grid interpolation of eps).
class ModulationWorkspace {
 public:
  explicit ModulationWorkspace(const PeriodicBox& box)
      : coarse(box), fine_box(refined(box, 2)), fine(fine_box) {}
  FourierWorkspace coarse;
  PeriodicBox fine_box;
  FourierWorkspace fine;
};

/// Newton solve of the four orthogonality conditions.  The Jacobian uses
/// the analytic parameter derivatives of the family (scaling generator
/// 2 + x.grad and translations), evaluated spectrally from the sampled
/// profile.  Throws solver_error on Newton divergence (outside the
/// stability neighborhood) or a singular Jacobian (degenerate field).
ModulationState decompose(const SimState& state, const SolitonFamily& family, double c_guess,
                          const Double3& a_guess, ModulationWorkspace& mws,
                          const DecomposeOptions& opts = {});

/// The four linearization vectors driving the parameter ODEs, built
/// spectrally on the box from the centered soliton, with both scaling
/// denominators (the derivation's <Lambda Q, Q^2> and the alternative
/// <Lambda Q, Q>) recorded.
struct LinearizedVectors {
  Vector f_vec;                 // (1 - Lap - 2Q) d_x(Q^2)
  std::array<Vector, 3> g_vec;  // (1 - Lap - 2Q) Q_xx, Q_xy, Q_xz
  double denom_c = 0.0;         // <Lambda Q, Q^2> = ||Q||_{L3}^3
  double denom_c_alt = 0.0;     // <Lambda Q, Q>   (= ||Q||^2 / 2)
  Double3 g_norms{};            // ||Q_x||^2, ||Q_y||^2, ||Q_z||^2
};
LinearizedVectors build_linearized_vectors(const PeriodicBox& box, const SolitonFamily& family,
                                           FourierWorkspace& ws);

/// Residuals of the modulation-parameter ODEs along a uniformly sampled
/// trajectory, by centered differencing of (c, a):
///   R_c   = | c^2 c' - <eps, f_vec> / denom_c |
///   R_a_x = | c^2 (a_x' - c^{-2}) - <eps, g_x> / ||Q_x||^2 |,  etc.
/// The soliton-frame inner products are evaluated exactly through the
/// stored lab-frame remainder (no interpolation enters).
struct OdeResidualRecord {
  double t = 0.0;
  double r_c = 0.0;
  Double3 r_a{};
  double b2 = 0.0;
};
std::vector<OdeResidualRecord> parameter_ode_residual(const std::vector<ModulationState>& traj,
                                                      const LinearizedVectors& vecs,
                                                      const SolitonFamily& family,
                                                      const PeriodicBox& box,
                                                      FourierWorkspace& ws);

}  // namespace zk
