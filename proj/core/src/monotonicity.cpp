#include "zk/monotonicity.hpp"

#include <cmath>

namespace zk {

namespace {

double phi_plus(double s, double K) {
  const double z = s / K;
  if (z > 700.0) return 1.0;  // atan(exp) saturates; avoid overflow
  return 2.0 / M_PI * std::atan(std::exp(z));
}

}  // namespace

MonotonicitySample monotonicity(const SimState& state, const Double3& a_t,
                                const MonotonicityParams& p, FourierWorkspace& ws) {
  if (!(p.delta > 0.0)) throw std::invalid_argument("monotonicity: delta must be positive");
  if (!(p.theta >= 0.0 && p.theta <= M_PI / 3.0 - p.delta))
    throw std::invalid_argument("monotonicity: theta outside [0, pi/3 - delta]");
  if (!(p.lambda >= p.delta && p.lambda <= 1.0 - p.delta))
    throw std::invalid_argument("monotonicity: lambda outside [delta, 1 - delta]");
  if (!(p.K >= 4.0 / p.delta))
    throw std::invalid_argument("monotonicity: K below 4/delta");
  if (!(state.box == ws.box())) throw shape_error("monotonicity: workspace/box mismatch");

  // Recenter on the soliton: exact spectral evaluation of u(x + a(t)).
  VectorC uhat = ws.forward(state.u);
  phase_shift(state.box, uhat, a_t);
  const Vector uc = ws.inverse(uhat);

  const PeriodicBox& box = state.box;
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const double shift = -p.r + p.lambda * (state.t - p.t0);
  double ip = 0.0, im = 0.0;
  for (int iz = 0; iz < box.n[2]; ++iz) {
    const double z = box.coord(2, iz);
    for (int iy = 0; iy < box.n[1]; ++iy) {
      const double y = box.coord(1, iy);
      const double cone = st * std::sqrt(1.0 + y * y + z * z);
      for (int ix = 0; ix < box.n[0]; ++ix) {
        const double x = box.coord(0, ix);
        const double arg = ct * (x + shift) + cone;
        const double u2 = uc[box.flat(ix, iy, iz)] * uc[box.flat(ix, iy, iz)];
        ip += phi_plus(arg, p.K) * u2;
        im += phi_plus(-arg, p.K) * u2;
      }
    }
  }

  MonotonicitySample s;
  s.t = state.t;
  s.params = p;
  s.I_plus = ip * box.cell_volume();
  s.I_minus = im * box.cell_volume();

  const double sup = uc.cwiseAbs().maxCoeff();
  double face = 0.0;
  for (int iz = 0; iz < box.n[2]; ++iz)
    for (int iy = 0; iy < box.n[1]; ++iy)
      face = std::max(face, std::abs(uc[box.flat(0, iy, iz)]));
  for (int iz = 0; iz < box.n[2]; ++iz)
    for (int ix = 0; ix < box.n[0]; ++ix)
      face = std::max(face, std::abs(uc[box.flat(ix, 0, iz)]));
  for (int iy = 0; iy < box.n[1]; ++iy)
    for (int ix = 0; ix < box.n[0]; ++ix)
      face = std::max(face, std::abs(uc[box.flat(ix, iy, 0)]));
  s.valid = face < 1e-8 * std::max(1.0, sup);
  return s;
}

}  // namespace zk
