#include "zk/soliton.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace zk {

namespace {

double wrap(double v, double len) { return std::remainder(v, len); }

// 6-point Lagrange weights for fractional offset t in [0,1) relative to the
// third node of the stencil {-2,-1,0,1,2,3}.
void lagrange6_weights(double t, double w[6]) {
  static const double node[6] = {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
  for (int i = 0; i < 6; ++i) {
    double p = 1.0;
    for (int j = 0; j < 6; ++j) {
      if (i == j) continue;
      p *= (t - node[j]) / (node[i] - node[j]);
    }
    w[i] = p;
  }
}

double interp6_periodic(const Vector& u, const PeriodicBox& box, const Double3& y) {
  int base[3];
  double w[3][6];
  for (int d = 0; d < 3; ++d) {
    const double t = (y[d] - (-0.5 * box.len[d])) / box.h(d);
    const double fl = std::floor(t);
    base[d] = static_cast<int>(fl);
    lagrange6_weights(t - fl, w[d]);
  }
  double acc = 0.0;
  for (int kz = 0; kz < 6; ++kz) {
    const int iz = ((base[2] + kz - 2) % box.n[2] + box.n[2]) % box.n[2];
    for (int ky = 0; ky < 6; ++ky) {
      const int iy = ((base[1] + ky - 2) % box.n[1] + box.n[1]) % box.n[1];
      const double wyz = w[2][kz] * w[1][ky];
      for (int kx = 0; kx < 6; ++kx) {
        const int ix = ((base[0] + kx - 2) % box.n[0] + box.n[0]) % box.n[0];
        acc += wyz * w[0][kx] * u[box.flat(ix, iy, iz)];
      }
    }
  }
  return acc;
}

}  // namespace

SolitonFamily::SolitonFamily(const RadialProfile& profile)
    : R_(profile.r, profile.R), r_max_(profile.r_max) {}

Vector SolitonFamily::sample_profile(const PeriodicBox& box, double c, const Double3& a) const {
  if (!(c > 0.0)) throw std::invalid_argument("SolitonFamily: scale c must be positive");
  // Torus diameter the profile must cover.
  const double diam = 0.5 * std::sqrt(box.len[0] * box.len[0] + box.len[1] * box.len[1] +
                                      box.len[2] * box.len[2]);
  if (diam / c > r_max_)
    throw config_error("soliton sample: radial profile (r_max=" + std::to_string(r_max_) +
                       ") does not cover the torus radius " + std::to_string(diam / c));
  Vector out(box.npoints());
  for (int iz = 0; iz < box.n[2]; ++iz) {
    const double dz = wrap(box.coord(2, iz) - a[2], box.len[2]);
    for (int iy = 0; iy < box.n[1]; ++iy) {
      const double dy = wrap(box.coord(1, iy) - a[1], box.len[1]);
      const double dyz = dy * dy + dz * dz;
      for (int ix = 0; ix < box.n[0]; ++ix) {
        const double dx = wrap(box.coord(0, ix) - a[0], box.len[0]);
        out[box.flat(ix, iy, iz)] = R_(std::sqrt(dx * dx + dyz) / c);
      }
    }
  }
  return out;
}

Vector SolitonFamily::sample(const PeriodicBox& box, double c, const Double3& a) const {
  return sample_profile(box, c, a) / (c * c);
}

Vector SolitonFamily::displacement(const PeriodicBox& box, double a, int axis) {
  Vector out(box.npoints());
  for (int iz = 0; iz < box.n[2]; ++iz)
    for (int iy = 0; iy < box.n[1]; ++iy)
      for (int ix = 0; ix < box.n[0]; ++ix) {
        const int i = axis == 0 ? ix : (axis == 1 ? iy : iz);
        out[box.flat(ix, iy, iz)] = wrap(box.coord(axis, i) - a, box.len[axis]);
      }
  return out;
}

PerturbationSpec perturbation_from_string(const std::string& kind, double amplitude,
                                          unsigned long long seed) {
  PerturbationSpec p;
  p.amplitude = amplitude;
  p.seed = seed;
  if (kind == "none") p.kind = PerturbationKind::None;
  else if (kind == "amplitude-bump") p.kind = PerturbationKind::AmplitudeBump;
  else if (kind == "smooth-noise") p.kind = PerturbationKind::SmoothNoise;
  else
    throw config_error("unknown perturbation '" + kind +
                       "' (expected none|amplitude-bump|smooth-noise; "
                       "multi-soliton initial data is out of scope)");
  return p;
}

SimState init_soliton(const PeriodicBox& box, const SolitonFamily& family, double c0,
                      const Double3& a0, const PerturbationSpec& pert) {
  for (int d = 0; d < 3; ++d)
    if (box.len[d] < 40.0 / c0)
      throw config_error("init_soliton: box length " + std::to_string(box.len[d]) +
                         " below the 40/c0 tail requirement");
  SimState s;
  s.box = box;
  s.t = 0.0;
  s.u = family.sample(box, c0, a0);

  // Tails must be negligible on the periodic seam.
  const double sup = s.u.cwiseAbs().maxCoeff();
  double face = 0.0;
  for (int iz = 0; iz < box.n[2]; ++iz)
    for (int iy = 0; iy < box.n[1]; ++iy)
      face = std::max(face, std::abs(s.u[box.flat(0, iy, iz)]));
  for (int iz = 0; iz < box.n[2]; ++iz)
    for (int ix = 0; ix < box.n[0]; ++ix)
      face = std::max(face, std::abs(s.u[box.flat(ix, 0, iz)]));
  for (int iy = 0; iy < box.n[1]; ++iy)
    for (int ix = 0; ix < box.n[0]; ++ix)
      face = std::max(face, std::abs(s.u[box.flat(ix, iy, 0)]));
  if (face > 1e-8 * sup)
    throw config_error("init_soliton: soliton tail " + std::to_string(face) +
                       " not negligible at the box boundary; box too small");

  switch (pert.kind) {
    case PerturbationKind::None:
      break;
    case PerturbationKind::AmplitudeBump:
      s.u *= (1.0 + pert.amplitude);
      break;
    case PerturbationKind::SmoothNoise: {
      FourierWorkspace ws(box);
      std::mt19937_64 rng(pert.seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      Vector noise(box.npoints());
      for (long i = 0; i < box.npoints(); ++i) noise[i] = gauss(rng);
      VectorC nhat = ws.forward(noise);
      // Smooth low-pass envelope; zero mean keeps the box integral intact.
      const int nxc = box.n[0] / 2 + 1;
      long idx = 0;
      for (int k = 0; k < box.n[2]; ++k) {
        const double kz = box.wavenumber(2, box.freq_index(2, k));
        for (int j = 0; j < box.n[1]; ++j) {
          const double ky = box.wavenumber(1, box.freq_index(1, j));
          for (int i = 0; i < nxc; ++i, ++idx) {
            const double kx = box.wavenumber(0, i);
            const double k2 = kx * kx + ky * ky + kz * kz;
            nhat[idx] *= std::exp(-k2);
          }
        }
      }
      nhat[0] = 0.0;
      dealias_two_thirds(box, nhat);
      noise = ws.inverse(nhat);
      const double target = pert.amplitude * std::sqrt(s.u.squaredNorm());
      noise *= target / std::sqrt(noise.squaredNorm());
      s.u += noise;
      break;
    }
  }
  return s;
}

namespace {

struct TestVectorNorms {
  double n_q2 = 0.0;
  Double3 n_dq{};
};

TestVectorNorms identity_norms(const PeriodicBox& box, const SolitonFamily& fam,
                               FourierWorkspace& ws) {
  TestVectorNorms n;
  const Vector Qs = fam.sample(box, 1.0, {0.0, 0.0, 0.0});
  const double dv = box.cell_volume();
  n.n_q2 = std::sqrt(dv * Qs.array().square().square().sum());
  VectorC qhat = ws.forward(Qs);
  for (int d = 0; d < 3; ++d) {
    VectorC dh = qhat;
    spectral_derivative(box, dh, d);
    n.n_dq[d] = std::sqrt(dv * ws.inverse(dh).squaredNorm());
  }
  return n;
}

}  // namespace

ModulationState decompose(const SimState& state, const SolitonFamily& family, double c_guess,
                          const Double3& a_guess, ModulationWorkspace& mws,
                          const DecomposeOptions& opts) {
  const PeriodicBox& box = state.box;
  if (!(box == mws.coarse.box())) throw shape_error("decompose: workspace/box mismatch");
  const double dv = box.cell_volume();
  FourierWorkspace& ws = mws.coarse;
  const TestVectorNorms norms = identity_norms(box, family, ws);

  double c = c_guess;
  Double3 a = a_guess;
  ModulationState out;
  out.t = state.t;

  Vector Wq, eta;
  std::array<Vector, 3> Wd;
  std::array<double, 4> resid{};
  int iter = 0;
  for (;; ++iter) {
    if (iter > opts.max_iter)
      throw solver_error("decompose: Newton did not converge (left the stability "
                         "neighborhood or bad initial guess)");
    Wq = family.sample_profile(box, c, a);
    VectorC What = ws.forward(Wq);
    for (int d = 0; d < 3; ++d) {
      VectorC dh = What;
      spectral_derivative(box, dh, d);
      Wd[d] = ws.inverse(dh);
    }
    const double ic = 1.0 / c, ic2 = ic * ic, ic3 = ic2 * ic;
    eta = state.u - ic2 * Wq;

    // Orthogonality residuals against (Q^2)_{c,a} and (grad Q)_{c,a}.
    Vector m1 = ic2 * Wq.array().square().matrix();
    Eigen::Vector4d F;
    F[0] = dv * eta.dot(m1);
    for (int d = 0; d < 3; ++d) F[1 + d] = dv * ic * eta.dot(Wd[d]);
    resid[0] = c * F[0] / norms.n_q2;
    for (int d = 0; d < 3; ++d) resid[1 + d] = c * F[1 + d] / norms.n_dq[d];
    double rmax = 0.0;
    for (double r : resid) rmax = std::max(rmax, std::abs(r));
    if (rmax < opts.tol) break;

    // Analytic Jacobian from the family's parameter derivatives.
    const Vector dx = SolitonFamily::displacement(box, a[0], 0);
    const Vector dy = SolitonFamily::displacement(box, a[1], 1);
    const Vector dz = SolitonFamily::displacement(box, a[2], 2);
    const Vector dgradW = dx.cwiseProduct(Wd[0]) + dy.cwiseProduct(Wd[1]) + dz.cwiseProduct(Wd[2]);

    std::array<std::array<Vector, 3>, 3> Wdd;
    for (int d1 = 0; d1 < 3; ++d1)
      for (int d2 = d1; d2 < 3; ++d2) {
        VectorC hh = What;
        spectral_derivative(box, hh, d1);
        spectral_derivative(box, hh, d2);
        Wdd[d1][d2] = ws.inverse(hh);
        if (d2 != d1) Wdd[d2][d1] = Wdd[d1][d2];
      }

    const Vector dQ_dc = -ic3 * (2.0 * Wq + dgradW);
    const Vector dm1_dc = -ic3 * (2.0 * Wq.array().square().matrix() +
                                  2.0 * Wq.cwiseProduct(dgradW));
    Eigen::Matrix4d J;
    // column 0: d/dc
    J(0, 0) = dv * (dQ_dc.dot(-m1) + eta.dot(dm1_dc));
    for (int i = 0; i < 3; ++i) {
      const Vector dgradWd = dx.cwiseProduct(Wdd[i][0]) + dy.cwiseProduct(Wdd[i][1]) +
                             dz.cwiseProduct(Wdd[i][2]);
      const Vector dmi_dc = -ic2 * (2.0 * Wd[i] + dgradWd);
      J(1 + i, 0) = dv * (dQ_dc.dot(-(ic * Wd[i]).eval()) + eta.dot(dmi_dc));
    }
    // columns 1..3: d/da_k
    for (int k = 0; k < 3; ++k) {
      const Vector dQ_dak = -ic2 * Wd[k];
      const Vector dm1_dak = -ic2 * 2.0 * Wq.cwiseProduct(Wd[k]);
      J(0, 1 + k) = dv * (dQ_dak.dot(-m1) + eta.dot(dm1_dak));
      for (int i = 0; i < 3; ++i) {
        const Vector dmi_dak = -ic * Wdd[i][k];
        J(1 + i, 1 + k) = dv * (dQ_dak.dot(-(ic * Wd[i]).eval()) + eta.dot(dmi_dak));
      }
    }

    Eigen::FullPivLU<Eigen::Matrix4d> lu(J);
    if (!lu.isInvertible())
      throw solver_error("decompose: singular Jacobian (degenerate field)");
    Eigen::Vector4d delta = lu.solve(-F);
    delta[0] = std::clamp(delta[0], -0.1, 0.1);
    for (int k = 1; k < 4; ++k) delta[k] = std::clamp(delta[k], -0.5, 0.5);
    c += delta[0];
    a[0] += delta[1];
    a[1] += delta[2];
    a[2] += delta[3];
    if (!(c > 0.05))
      throw solver_error("decompose: scale parameter collapsed; outside the Newton basin");
  }

  out.c = c;
  out.a = a;
  out.eta = eta;
  out.b = std::sqrt(c * dv * eta.squaredNorm());
  out.newton_iters = iter;
  out.ortho_residuals = resid;

  if (opts.materialize_eps) {
    const Vector u_fine = fourier_upsample(mws.coarse, mws.fine, state.u);
    const Vector Qs = family.sample(box, 1.0, {0.0, 0.0, 0.0});
    out.eps.resize(box.npoints());
    const double c2 = c * c;
    for (int iz = 0; iz < box.n[2]; ++iz)
      for (int iy = 0; iy < box.n[1]; ++iy)
        for (int ix = 0; ix < box.n[0]; ++ix) {
          const Double3 y{c * box.coord(0, ix) + a[0], c * box.coord(1, iy) + a[1],
                          c * box.coord(2, iz) + a[2]};
          out.eps[box.flat(ix, iy, iz)] =
              c2 * interp6_periodic(u_fine, mws.fine_box, y) - Qs[box.flat(ix, iy, iz)];
        }
  }
  return out;
}

LinearizedVectors build_linearized_vectors(const PeriodicBox& box, const SolitonFamily& family,
                                           FourierWorkspace& ws) {
  LinearizedVectors v;
  const double dv = box.cell_volume();
  const Vector Qs = family.sample(box, 1.0, {0.0, 0.0, 0.0});
  const VectorC qhat = ws.forward(Qs);

  auto lop = [&](const VectorC& fhat) {
    VectorC lh = fhat;
    spectral_laplacian(box, lh);
    const Vector lap = ws.inverse(lh);
    const Vector f = ws.inverse(fhat);
    return (f - lap - 2.0 * Qs.cwiseProduct(f)).eval();
  };

  {
    const Vector q2 = Qs.array().square();
    VectorC ph = ws.forward(q2);
    spectral_derivative(box, ph, 0);
    v.f_vec = lop(ph);
  }
  for (int d = 0; d < 3; ++d) {
    VectorC ph = qhat;
    spectral_derivative(box, ph, 0);
    spectral_derivative(box, ph, d);
    v.g_vec[d] = lop(ph);
  }

  // Scaling generator Lambda = 2 + x . grad applied to the centered soliton.
  Vector lam = 2.0 * Qs;
  for (int d = 0; d < 3; ++d) {
    VectorC dh = qhat;
    spectral_derivative(box, dh, d);
    const Vector dq = ws.inverse(dh);
    const Vector xd = SolitonFamily::displacement(box, 0.0, d);
    lam += xd.cwiseProduct(dq);
    v.g_norms[d] = dv * dq.squaredNorm();
  }
  v.denom_c = dv * lam.dot(Qs.array().square().matrix());
  v.denom_c_alt = dv * lam.dot(Qs);
  return v;
}

std::vector<OdeResidualRecord> parameter_ode_residual(const std::vector<ModulationState>& traj,
                                                      const LinearizedVectors& vecs,
                                                      const SolitonFamily& family,
                                                      const PeriodicBox& box,
                                                      FourierWorkspace& ws) {
  if (traj.size() < 3)
    throw std::invalid_argument("parameter_ode_residual: trajectory too short for differencing");
  const double dt = traj[1].t - traj[0].t;
  for (size_t k = 1; k < traj.size(); ++k)
    if (std::abs(traj[k].t - traj[k - 1].t - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw std::invalid_argument("parameter_ode_residual: trajectory must be uniformly sampled");

  const double dv = box.cell_volume();
  std::vector<OdeResidualRecord> out;
  for (size_t k = 1; k + 1 < traj.size(); ++k) {
    const ModulationState& s = traj[k];
    const double c = s.c;
    const double cp = (traj[k + 1].c - traj[k - 1].c) / (2.0 * dt);
    Double3 ap;
    for (int d = 0; d < 3; ++d) ap[d] = (traj[k + 1].a[d] - traj[k - 1].a[d]) / (2.0 * dt);

    // Soliton-frame test vectors rebuilt at (c, a) from the sampled profile.
    const Vector Wq = family.sample_profile(box, c, s.a);
    const VectorC What = ws.forward(Wq);
    const double c2 = c * c;

    auto inner_eps = [&](const VectorC& phat, double deriv_scale) {
      // <eps, (L f)>_xi = c * <eta, (L f)_{c,a}>_x with
      // (L f)_{c,a} = c^{-2} [ s*P - s*c^2*Lap P - 2 W .* (s*P) ], s = deriv_scale.
      VectorC lh = phat;
      spectral_laplacian(box, lh);
      const Vector P = ws.inverse(phat);
      const Vector LP = ws.inverse(lh);
      const Vector vca = (deriv_scale / c2) *
                         (P - c2 * LP - 2.0 * Wq.cwiseProduct(P)).eval();
      return c * dv * s.eta.dot(vca);
    };

    OdeResidualRecord rec;
    rec.t = s.t;
    rec.b2 = s.b * s.b;
    {
      VectorC ph = ws.forward(Wq.array().square().matrix());
      spectral_derivative(box, ph, 0);
      const double ip = inner_eps(ph, c);
      rec.r_c = std::abs(c2 * cp - ip / vecs.denom_c);
    }
    for (int d = 0; d < 3; ++d) {
      VectorC ph = What;
      spectral_derivative(box, ph, 0);
      spectral_derivative(box, ph, d);
      const double ip = inner_eps(ph, c2);
      const double drift = (d == 0) ? c2 * (ap[0] - 1.0 / c2) : c2 * ap[d];
      rec.r_a[d] = std::abs(drift - ip / vecs.g_norms[d]);
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace zk
