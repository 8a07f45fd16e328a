#include "zk/groundstate.hpp"

#include <cmath>

namespace zk {

PchipInterpolant radial_interpolant(const RadialProfile& profile) {
  return PchipInterpolant(profile.r, profile.R);
}

GroundStateField lift_to_tensor(const RadialProfile& profile, const TensorGrid& grid) {
  const double Lmax = std::max({grid.ax.L, grid.ay.L, grid.az.L});
  if (profile.r_max < std::sqrt(3.0) * Lmax)
    throw std::invalid_argument(
        "lift_to_tensor: r_max < sqrt(3) * L would require extrapolation; "
        "enlarge the radial domain");

  const PchipInterpolant interp = radial_interpolant(profile);
  GroundStateField f;
  f.grid = &grid;
  f.values.resize(grid.npoints());
  for (int iz = 0; iz < grid.az.npoints(); ++iz)
    for (int iy = 0; iy < grid.ay.npoints(); ++iy)
      for (int ix = 0; ix < grid.ax.npoints(); ++ix) {
        const Double3 c = grid.coord(ix, iy, iz);
        const double r = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
        f.values[grid.flat(ix, iy, iz)] = interp(r);
      }
  f.values_dx = apply_along_axis(grid.ax.D1, f.values, grid, 0);
  f.interp_error = std::abs(tensor_inner(f.values, f.values, grid) - radial_mass(profile));
  return f;
}

}  // namespace zk
