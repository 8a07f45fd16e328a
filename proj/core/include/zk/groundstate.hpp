#pragma once

#include "zk/cheb.hpp"
#include "zk/pchip.hpp"
#include "zk/radial.hpp"
#include "zk/types.hpp"

namespace zk {

/// The radial profile lifted to a 3D tensor grid by shape-preserving cubic
/// interpolation in r = |x|, with the x-derivative taken by the grid's own
/// mapped differentiation matrix.
struct GroundStateField {
  const TensorGrid* grid = nullptr;
  Vector values;      // Q at all tensor nodes, x-fastest
  Vector values_dx;   // D1x applied to values
  double interp_error = 0.0;  // |M[Q] - M[R]|
};

/// Lift a converged profile onto a tensor grid.  Requires
/// r_max >= sqrt(3) * max axis half-width so that no tensor node needs
/// extrapolation (a hard error otherwise).
GroundStateField lift_to_tensor(const RadialProfile& profile, const TensorGrid& grid);

/// Reusable radial interpolant of a profile (also used by the periodic
/// sampler in the evolution code).
PchipInterpolant radial_interpolant(const RadialProfile& profile);

}  // namespace zk
