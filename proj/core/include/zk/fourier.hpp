#pragma once

#include "zk/types.hpp"

#include <complex>
#include <vector>

namespace zk {

using VectorC = Eigen::VectorXcd;

/// Uniform periodic box [-len/2, len/2)^3.  Real fields are flattened
/// x-fastest: flat = ix + nx * (iy + ny * iz).  Spectral data uses the
/// real-to-complex layout with the x axis halved:
/// cflat = i + (nx/2+1) * (j + ny * k).
struct PeriodicBox {
  Index3 n{0, 0, 0};
  Double3 len{0.0, 0.0, 0.0};

  double h(int d) const { return len[d] / n[d]; }
  double coord(int d, int i) const { return -0.5 * len[d] + h(d) * i; }
  long npoints() const { return static_cast<long>(n[0]) * n[1] * n[2]; }
  long ncomplex() const { return static_cast<long>(n[0] / 2 + 1) * n[1] * n[2]; }
  double cell_volume() const { return h(0) * h(1) * h(2); }
  double volume() const { return len[0] * len[1] * len[2]; }
  long flat(int ix, int iy, int iz) const {
    return ix + static_cast<long>(n[0]) * (iy + static_cast<long>(n[1]) * iz);
  }
  /// Signed frequency index along a full axis (0..n-1 -> -n/2..n/2-1 style).
  int freq_index(int d, int j) const { return j <= n[d] / 2 ? j : j - n[d]; }
  double wavenumber(int d, int fi) const { return 2.0 * M_PI * fi / len[d]; }
  bool operator==(const PeriodicBox& o) const { return n == o.n && len == o.len; }
};

/// FFTW-backed transforms between real fields and the halved complex
/// layout.  Plans are created once (FFTW_ESTIMATE, deterministic) on
/// internal buffers; calls copy through them, so inputs are never
/// destroyed.  Not reentrant: use one workspace per thread.
class FourierWorkspace {
 public:
  explicit FourierWorkspace(const PeriodicBox& box);
  ~FourierWorkspace();
  FourierWorkspace(const FourierWorkspace&) = delete;
  FourierWorkspace& operator=(const FourierWorkspace&) = delete;

  const PeriodicBox& box() const { return box_; }

  void forward(const Vector& u, VectorC& uhat);
  void inverse(const VectorC& uhat, Vector& u);  // includes the 1/N normalization
  Vector inverse(const VectorC& uhat);
  VectorC forward(const Vector& u);

 private:
  PeriodicBox box_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
  double* real_ = nullptr;
  void* cplx_ = nullptr;  // fftw_complex*
};

/// Multiply by (i k_dir) in place.
void spectral_derivative(const PeriodicBox& box, VectorC& uhat, int dir);
/// Multiply by -|k|^2 in place.
void spectral_laplacian(const PeriodicBox& box, VectorC& uhat);
/// Zero all modes with any |freq index| > floor(n/3) (2/3-rule mask).
void dealias_two_thirds(const PeriodicBox& box, VectorC& uhat);
/// Multiply by exp(i k . s): the inverse transform then evaluates u(x + s).
void phase_shift(const PeriodicBox& box, VectorC& uhat, const Double3& s);

/// Exact band-limited upsampling onto the factor-times finer grid
/// (spectrum zero-padding).  Used for sub-grid interpolation.
Vector fourier_upsample(FourierWorkspace& coarse, FourierWorkspace& fine, const Vector& u);

/// Box with every axis refined by an integer factor.
PeriodicBox refined(const PeriodicBox& box, int factor);

}  // namespace zk
