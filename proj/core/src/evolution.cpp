#include "zk/evolution.hpp"

#include <cmath>
#include <string>

namespace zk {

ConservedQuantities conserved(const SimState& state, FourierWorkspace& ws) {
  if (!(state.box == ws.box())) throw shape_error("conserved: workspace/box mismatch");
  ConservedQuantities q;
  const double dv = state.box.cell_volume();
  double m = 0.0, s1 = 0.0, s3 = 0.0;
  for (long i = 0; i < state.box.npoints(); ++i) {
    const double u = state.u[i];
    m += u * u;
    s1 += u;
    s3 += u * u * u;
  }
  q.mass = m * dv;
  q.integral = s1 * dv;
  VectorC uhat = ws.forward(state.u);
  double grad = 0.0;
  for (int d = 0; d < 3; ++d) {
    VectorC dh = uhat;
    spectral_derivative(state.box, dh, d);
    const Vector du = ws.inverse(dh);
    grad += du.squaredNorm();
  }
  q.energy = 0.5 * grad * dv - s3 * dv / 3.0;
  return q;
}

double stability_max_dt(const PeriodicBox& box, double sup_u) {
  const double kx_cut = box.wavenumber(0, box.n[0] / 3);
  return 2.8 / (2.0 * std::max(sup_u, 1e-12) * kx_cut);
}

ZkStepper::ZkStepper(const PeriodicBox& box, double blowup_bound)
    : box_(box), ws_(box), blowup_bound_(blowup_bound) {
  lin_.resize(box.ncomplex());
  const int nxc = box.n[0] / 2 + 1;
  long idx = 0;
  for (int k = 0; k < box.n[2]; ++k) {
    const double kz = box.wavenumber(2, box.freq_index(2, k));
    for (int j = 0; j < box.n[1]; ++j) {
      const double ky = box.wavenumber(1, box.freq_index(1, j));
      for (int i = 0; i < nxc; ++i, ++idx) {
        const double kx = box.wavenumber(0, i);
        lin_[idx] = std::complex<double>(0.0, kx * (kx * kx + ky * ky + kz * kz));
      }
    }
  }
}

void ZkStepper::ensure_coeffs(double dt) {
  if (dt == coeff_dt_) return;
  if (!(dt > 0.0)) throw std::invalid_argument("ZkStepper: dt must be positive");
  const long nc = box_.ncomplex();
  E_.resize(nc); E2_.resize(nc); Qc_.resize(nc); f1_.resize(nc); f2_.resize(nc); f3_.resize(nc);
  const int M = 32;
  std::vector<std::complex<double>> ring(M);
  for (int m = 0; m < M; ++m) {
    const double th = 2.0 * M_PI * (m + 0.5) / M;
    ring[m] = std::complex<double>(std::cos(th), std::sin(th));
  }
  for (long idx = 0; idx < nc; ++idx) {
    const std::complex<double> z0 = dt * lin_[idx];
    E_[idx] = std::exp(z0);
    E2_[idx] = std::exp(0.5 * z0);
    std::complex<double> q = 0.0, a = 0.0, b = 0.0, c = 0.0;
    for (int m = 0; m < M; ++m) {
      const std::complex<double> z = z0 + ring[m];
      const std::complex<double> ez = std::exp(z);
      const std::complex<double> z2 = z * z, z3 = z2 * z;
      q += (std::exp(0.5 * z) - 1.0) / z;
      a += (-4.0 - z + ez * (4.0 - 3.0 * z + z2)) / z3;
      b += (2.0 + z + ez * (-2.0 + z)) / z3;
      c += (-4.0 - 3.0 * z - z2 + ez * (4.0 - z)) / z3;
    }
    const double invM = 1.0 / M;
    Qc_[idx] = dt * q * invM;
    f1_[idx] = dt * a * invM;
    f2_[idx] = dt * b * invM;
    f3_[idx] = dt * c * invM;
  }
  coeff_dt_ = dt;
}

VectorC ZkStepper::nonlinear(const VectorC& vhat) {
  Vector u = ws_.inverse(vhat);
  last_sup_ = u.cwiseAbs().maxCoeff();
  if (last_sup_ > blowup_bound_)
    throw solver_error("blow-up detected at t=" + std::to_string(t_) +
                       ": sup|u|=" + std::to_string(last_sup_) +
                       " exceeds bound " + std::to_string(blowup_bound_));
  for (long i = 0; i < box_.npoints(); ++i) u[i] *= u[i];
  VectorC w = ws_.forward(u);
  dealias_two_thirds(box_, w);
  spectral_derivative(box_, w, 0);
  return -w;  // -d_x (u^2)
}

void ZkStepper::load(const SimState& state) {
  if (!(state.box == box_)) throw shape_error("ZkStepper::load: box mismatch");
  vhat_ = ws_.forward(state.u);
  dealias_two_thirds(box_, vhat_);
  t_ = state.t;
}

void ZkStepper::advance(int steps, double dt) {
  ensure_coeffs(dt);
  for (int s = 0; s < steps; ++s) {
    const VectorC Nv = nonlinear(vhat_);
    VectorC av = E2_.cwiseProduct(vhat_) + Qc_.cwiseProduct(Nv);
    const VectorC Na = nonlinear(av);
    VectorC bv = E2_.cwiseProduct(vhat_) + Qc_.cwiseProduct(Na);
    const VectorC Nb = nonlinear(bv);
    VectorC cv = E2_.cwiseProduct(av) + Qc_.cwiseProduct(2.0 * Nb - Nv);
    const VectorC Nc = nonlinear(cv);
    vhat_ = E_.cwiseProduct(vhat_) + f1_.cwiseProduct(Nv) +
            2.0 * f2_.cwiseProduct(Na + Nb) + f3_.cwiseProduct(Nc);
    t_ += dt;
  }
}

SimState ZkStepper::snapshot() {
  SimState s;
  s.box = box_;
  s.u = ws_.inverse(vhat_);
  s.t = t_;
  return s;
}

SimState ZkStepper::step(const SimState& state, double dt) {
  const double sup = state.u.cwiseAbs().maxCoeff();
  if (dt > stability_max_dt(box_, sup))
    throw config_error("ZkStepper::step: dt=" + std::to_string(dt) +
                       " violates the stability bound " +
                       std::to_string(stability_max_dt(box_, sup)));
  load(state);
  advance(1, dt);
  return snapshot();
}

}  // namespace zk
