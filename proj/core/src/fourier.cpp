#include "zk/fourier.hpp"

#include <fftw3.h>

#include <cstring>

namespace zk {

FourierWorkspace::FourierWorkspace(const PeriodicBox& box) : box_(box) {
  if (box.n[0] < 4 || box.n[1] < 4 || box.n[2] < 4)
    throw std::invalid_argument("FourierWorkspace: need at least 4 points per axis");
  real_ = fftw_alloc_real(box.npoints());
  fftw_complex* c = fftw_alloc_complex(box.ncomplex());
  cplx_ = c;
  // x-fastest flattening means FFTW sees dims (n2, n1, n0) row-major.
  plan_fwd_ = fftw_plan_dft_r2c_3d(box.n[2], box.n[1], box.n[0], real_, c, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_c2r_3d(box.n[2], box.n[1], box.n[0], c, real_, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw solver_error("FourierWorkspace: fftw plan creation failed");
}

FourierWorkspace::~FourierWorkspace() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(real_);
  fftw_free(static_cast<fftw_complex*>(cplx_));
}

void FourierWorkspace::forward(const Vector& u, VectorC& uhat) {
  if (u.size() != box_.npoints()) throw shape_error("forward: field size mismatch");
  uhat.resize(box_.ncomplex());
  std::memcpy(real_, u.data(), sizeof(double) * box_.npoints());
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(uhat.data(), cplx_, sizeof(fftw_complex) * box_.ncomplex());
}

void FourierWorkspace::inverse(const VectorC& uhat, Vector& u) {
  if (uhat.size() != box_.ncomplex()) throw shape_error("inverse: spectrum size mismatch");
  u.resize(box_.npoints());
  std::memcpy(cplx_, uhat.data(), sizeof(fftw_complex) * box_.ncomplex());
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  const double scale = 1.0 / static_cast<double>(box_.npoints());
  for (long i = 0; i < box_.npoints(); ++i) u[i] = real_[i] * scale;
}

Vector FourierWorkspace::inverse(const VectorC& uhat) {
  Vector u;
  inverse(uhat, u);
  return u;
}

VectorC FourierWorkspace::forward(const Vector& u) {
  VectorC uhat;
  forward(u, uhat);
  return uhat;
}

namespace {

template <typename F>
void for_each_mode(const PeriodicBox& box, VectorC& uhat, F&& f) {
  const int nxc = box.n[0] / 2 + 1;
  long idx = 0;
  for (int k = 0; k < box.n[2]; ++k) {
    const int fk = box.freq_index(2, k);
    for (int j = 0; j < box.n[1]; ++j) {
      const int fj = box.freq_index(1, j);
      for (int i = 0; i < nxc; ++i, ++idx) f(uhat[idx], i, fj, fk);
    }
  }
}

}  // namespace

void spectral_derivative(const PeriodicBox& box, VectorC& uhat, int dir) {
  for_each_mode(box, uhat, [&](std::complex<double>& v, int fi, int fj, int fk) {
    const int f = dir == 0 ? fi : (dir == 1 ? fj : fk);
    const double kd = box.wavenumber(dir, f);
    v *= std::complex<double>(0.0, kd);
  });
}

void spectral_laplacian(const PeriodicBox& box, VectorC& uhat) {
  for_each_mode(box, uhat, [&](std::complex<double>& v, int fi, int fj, int fk) {
    const double kx = box.wavenumber(0, fi);
    const double ky = box.wavenumber(1, fj);
    const double kz = box.wavenumber(2, fk);
    v *= -(kx * kx + ky * ky + kz * kz);
  });
}

void dealias_two_thirds(const PeriodicBox& box, VectorC& uhat) {
  const int cx = box.n[0] / 3, cy = box.n[1] / 3, cz = box.n[2] / 3;
  for_each_mode(box, uhat, [&](std::complex<double>& v, int fi, int fj, int fk) {
    if (fi > cx || std::abs(fj) > cy || std::abs(fk) > cz) v = 0.0;
  });
}

void phase_shift(const PeriodicBox& box, VectorC& uhat, const Double3& s) {
  for_each_mode(box, uhat, [&](std::complex<double>& v, int fi, int fj, int fk) {
    const double arg = box.wavenumber(0, fi) * s[0] + box.wavenumber(1, fj) * s[1] +
                       box.wavenumber(2, fk) * s[2];
    v *= std::complex<double>(std::cos(arg), std::sin(arg));
  });
}

PeriodicBox refined(const PeriodicBox& box, int factor) {
  PeriodicBox f = box;
  for (int d = 0; d < 3; ++d) f.n[d] *= factor;
  return f;
}

Vector fourier_upsample(FourierWorkspace& coarse, FourierWorkspace& fine, const Vector& u) {
  const PeriodicBox& cb = coarse.box();
  const PeriodicBox& fb = fine.box();
  for (int d = 0; d < 3; ++d) {
    if (fb.n[d] < cb.n[d] || fb.len[d] != cb.len[d])
      throw shape_error("fourier_upsample: fine box must refine the coarse one");
  }
  VectorC chat = coarse.forward(u);
  VectorC fhat = VectorC::Zero(fb.ncomplex());
  const int nxc_c = cb.n[0] / 2 + 1;
  const int nxc_f = fb.n[0] / 2 + 1;
  const double scale = static_cast<double>(fb.npoints()) / static_cast<double>(cb.npoints());
  // Exact-Nyquist planes of the coarse grid are dropped: they have no
  // unambiguous fine-grid image.  Dealiased fields carry nothing there.
  for (int k = 0; k < cb.n[2]; ++k) {
    const int fk = cb.freq_index(2, k);
    if (cb.n[2] % 2 == 0 && fk == -cb.n[2] / 2) continue;
    const int kf = fk >= 0 ? fk : fb.n[2] + fk;
    for (int j = 0; j < cb.n[1]; ++j) {
      const int fj = cb.freq_index(1, j);
      if (cb.n[1] % 2 == 0 && fj == -cb.n[1] / 2) continue;
      const int jf = fj >= 0 ? fj : fb.n[1] + fj;
      for (int i = 0; i < nxc_c; ++i) {
        if (cb.n[0] % 2 == 0 && i == cb.n[0] / 2) continue;
        fhat[i + static_cast<long>(nxc_f) * (jf + static_cast<long>(fb.n[1]) * kf)] =
            scale * chat[i + static_cast<long>(nxc_c) * (j + static_cast<long>(cb.n[1]) * k)];
      }
    }
  }
  return fine.inverse(fhat);
}

}  // namespace zk
