#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zk/cheb.hpp"

#include <cmath>
#include <random>

using namespace zk;

TEST_CASE("CGL nodes: small N against closed forms") {
  {
    Vector xi = cgl_nodes(1);
    CHECK(xi[0] == 1.0);
    CHECK(xi[1] == -1.0);
  }
  {
    Vector xi = cgl_nodes(2);
    CHECK(xi[0] == 1.0);
    CHECK(xi[1] == 0.0);
    CHECK(xi[2] == -1.0);
  }
  {
    Vector xi = cgl_nodes(4);
    CHECK(xi[0] == 1.0);
    CHECK(xi[1] == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
    CHECK(xi[2] == 0.0);
    CHECK(xi[3] == doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-15));
    CHECK(xi[4] == -1.0);
  }
  // exact odd symmetry
  Vector xi = cgl_nodes(17);
  for (int j = 0; j <= 17; ++j) CHECK(xi[j] == -xi[17 - j]);
}

TEST_CASE("cheb_diff: constants, identity, random polynomial oracle") {
  const int N = 12;
  Matrix D = cheb_diff(N);
  Vector xi = cgl_nodes(N);

  Vector ones = Vector::Ones(N + 1);
  CHECK((D * ones).cwiseAbs().maxCoeff() < 1e-12);

  Vector dxi = D * xi;
  for (int j = 0; j <= N; ++j) CHECK(dxi[j] == doctest::Approx(1.0).epsilon(1e-12));

  // Random degree-N polynomial: differentiate coefficients as the oracle.
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector coef(N + 1);
  for (int k = 0; k <= N; ++k) coef[k] = unif(rng);
  Vector p(N + 1), dp(N + 1);
  for (int j = 0; j <= N; ++j) {
    double v = 0.0, dv = 0.0;
    for (int k = N; k >= 0; --k) v = v * xi[j] + coef[k];
    for (int k = N; k >= 1; --k) dv = dv * xi[j] + k * coef[k];
    p[j] = v;
    dp[j] = dv;
  }
  Vector err = D * p - dp;
  CHECK(err.cwiseAbs().maxCoeff() < 1e-10 * dp.cwiseAbs().maxCoeff());
}

TEST_CASE("map_axis: degenerate-mapping limit a -> 0") {
  const double L = 30.0;
  MappedAxis ax = map_axis(32, 1e-6, L);
  for (int j = 0; j <= 32; ++j) {
    if (ax.xi[j] == 0.0) continue;
    CHECK(ax.x[j] / (L * ax.xi[j]) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("map_axis: structure invariants") {
  MappedAxis ax = map_axis(32, 4.0, 30.0);
  CHECK(ax.x[0] == 30.0);
  CHECK(ax.x[32] == -30.0);
  for (int j = 0; j <= 32; ++j) {
    CHECK(ax.x[j] == -ax.x[32 - j]);
    CHECK(ax.jac[j] > 0.0);
    if (j > 0) CHECK(ax.x[j] < ax.x[j - 1]);
  }
  // Row sums of D1 vanish
  Vector rs = ax.D1 * Vector::Ones(33);
  CHECK(rs.cwiseAbs().maxCoeff() < 1e-12 * 32 * 32);
  // Mapped-odd symmetry D1[j,k] = -D1[N-j,N-k]
  double maxd = ax.D1.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int j = 0; j <= 32; ++j)
    for (int k = 0; k <= 32; ++k)
      worst = std::max(worst, std::abs(ax.D1(j, k) + ax.D1(32 - j, 32 - k)));
  CHECK(worst < 1e-12 * maxd);
  // Weight symmetry and positivity
  for (int j = 0; j <= 32; ++j) {
    CHECK(ax.w[j] == ax.w[32 - j]);
    if (j > 0 && j < 32) CHECK(ax.w[j] > 0.0);
  }
  CHECK(ax.w[0] == 0.0);
}

TEST_CASE("mapped derivatives: identity and sine oracles") {
  {
    MappedAxis ax = map_axis(32, 4.0, 30.0);
    Vector dx = ax.D1 * ax.x;
    for (int j = 1; j < 32; ++j) CHECK(dx[j] == doctest::Approx(1.0).epsilon(1e-8));
  }
  {
    // sin(x) does not decay, so the coarse edge spacing of the mapped grid
    // dominates until N ~ 90; at N=96 the spectral error is < 1e-6.
    const int N = 96;
    MappedAxis ax = map_axis(N, 4.0, 30.0);
    Vector s(N + 1);
    for (int j = 0; j <= N; ++j) s[j] = std::sin(ax.x[j]);
    Vector d2s = ax.D2 * s;
    for (int j = 1; j < N; ++j) CHECK(std::abs(d2s[j] + std::sin(ax.x[j])) < 1e-6);
  }
  {
    // Decaying oscillation, the intended use case: already < 1e-6 at N=48.
    const int N = 48;
    MappedAxis ax = map_axis(N, 4.0, 30.0);
    Vector g(N + 1);
    for (int j = 0; j <= N; ++j) g[j] = std::exp(-ax.x[j] * ax.x[j] / 16.0);
    Vector d2g = ax.D2 * g;
    for (int j = 1; j < N; ++j) {
      const double x = ax.x[j];
      const double want = (x * x / 64.0 - 0.125) * g[j];
      CHECK(std::abs(d2g[j] - want) < 1e-6);
    }
  }
}

TEST_CASE("quadrature: constants, gaussian, odd integrand, exactness trend") {
  MappedAxis ax = map_axis(32, 4.0, 30.0);
  {
    double s = ax.w.sum();
    CHECK(std::abs(s - 60.0) / 60.0 < 0.005);
  }
  {
    double s = 0.0;
    for (int j = 0; j <= 32; ++j) s += ax.w[j] * std::exp(-ax.x[j] * ax.x[j]);
    CHECK(std::abs(s - std::sqrt(M_PI)) < 1e-3);
  }
  {
    double s = 0.0;
    for (int j = 0; j <= 32; ++j) s += ax.w[j] * ax.x[j] * std::exp(-ax.x[j] * ax.x[j]);
    CHECK(std::abs(s) < 1e-14);
  }
  {
    // f = (1 - (x/L)^2)^4 integrates to L * 256/315.
    const double L = 30.0;
    auto quad_err = [&](int N) {
      MappedAxis a = map_axis(N, 4.0, L);
      double s = 0.0;
      for (int j = 0; j <= N; ++j) {
        double u = a.x[j] / L;
        s += a.w[j] * std::pow(1.0 - u * u, 4);
      }
      return std::abs(s - L * 256.0 / 315.0);
    };
    CHECK(quad_err(8) >= 10.0 * quad_err(32));
  }
}

TEST_CASE("tensor grid: sizes, inner products, axis contraction") {
  TensorGrid g = make_grid(6, 4.0, 20.0);
  CHECK(g.npoints() == 7 * 7 * 7);
  CHECK(g.ninterior() == 5 * 5 * 5);

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector f(g.npoints()), h(g.npoints());
  for (int i = 0; i < g.npoints(); ++i) {
    f[i] = unif(rng);
    h[i] = unif(rng);
  }
  CHECK(tensor_inner(f, h, g) == tensor_inner(h, f, g));  // bitwise
  CHECK(tensor_inner(f, f, g) >= 0.0);

  // interior restriction round trip
  Vector fi = g.restrict_interior(f);
  Vector fe = g.extend_interior(fi);
  Vector fi2 = g.restrict_interior(fe);
  CHECK((fi - fi2).cwiseAbs().maxCoeff() == 0.0);

  // contraction along each axis against a brute-force loop
  Matrix A = Matrix::Random(7, 7);
  for (int axis = 0; axis < 3; ++axis) {
    Vector got = apply_along_axis(A, f, g, axis);
    Vector want = Vector::Zero(g.npoints());
    for (int iz = 0; iz < 7; ++iz)
      for (int iy = 0; iy < 7; ++iy)
        for (int ix = 0; ix < 7; ++ix) {
          double s = 0.0;
          for (int k = 0; k < 7; ++k) {
            int src = (axis == 0) ? g.flat(k, iy, iz) : (axis == 1) ? g.flat(ix, k, iz) : g.flat(ix, iy, k);
            int idx = (axis == 0) ? ix : (axis == 1) ? iy : iz;
            s += A(idx, k) * f[src];
          }
          want[g.flat(ix, iy, iz)] = s;
        }
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-13 * want.cwiseAbs().maxCoeff());
  }

  // shape errors
  CHECK_THROWS_AS(tensor_inner(fi, fi, g), shape_error);
  CHECK_THROWS_AS(apply_along_axis(Matrix::Zero(3, 3), f, g, 0), shape_error);
}
