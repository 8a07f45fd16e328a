#include "zk/cheb.hpp"

#include <cmath>
#include <sstream>

namespace zk {

Vector cgl_nodes(int N) {
  if (N < 1) throw std::invalid_argument("cgl_nodes: N must be >= 1");
  Vector xi(N + 1);
  // Fill the top half and mirror so xi_j = -xi_{N-j} exactly.
  for (int j = 0; j <= N / 2; ++j) {
    xi[j] = std::cos(M_PI * j / N);
    xi[N - j] = -xi[j];
  }
  if (N % 2 == 0) xi[N / 2] = 0.0;
  xi[0] = 1.0;
  xi[N] = -1.0;
  return xi;
}

Matrix cheb_diff(int N) {
  const Vector xi = cgl_nodes(N);
  const int n = N + 1;
  Vector c(n);
  for (int i = 0; i < n; ++i) {
    c[i] = ((i == 0 || i == N) ? 2.0 : 1.0) * ((i % 2 == 0) ? 1.0 : -1.0);
  }
  Matrix D(n, n);
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      D(i, j) = (c[i] / c[j]) / (xi[i] - xi[j]);
      rowsum += D(i, j);
    }
    D(i, i) = -rowsum;  // exact derivative of constants
  }
  return D;
}

MappedAxis map_axis(int N, double a, double L) {
  if (a <= 0.0) throw std::invalid_argument("map_axis: a must be > 0");
  if (L <= 0.0) throw std::invalid_argument("map_axis: L must be > 0");
  MappedAxis ax;
  ax.N = N;
  ax.a = a;
  ax.L = L;
  ax.xi = cgl_nodes(N);
  const int n = N + 1;
  const double sh = std::sinh(a);
  ax.x.resize(n);
  ax.jac.resize(n);
  Vector djac(n);  // x_xixi
  for (int j = 0; j < n; ++j) {
    ax.x[j] = L * std::sinh(a * ax.xi[j]) / sh;
    ax.jac[j] = L * a * std::cosh(a * ax.xi[j]) / sh;
    djac[j] = a * a * ax.x[j];
  }

  const Matrix Dxi = cheb_diff(N);
  const Matrix Dxi2 = Dxi * Dxi;
  ax.D1.resize(n, n);
  ax.D2.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const double inv_j = 1.0 / ax.jac[i];
    const double inv_j2 = inv_j * inv_j;
    const double coef1 = -djac[i] * inv_j2 * inv_j;  // d/dxi (1/x_xi) * (1/x_xi)
    for (int j = 0; j < n; ++j) {
      ax.D1(i, j) = inv_j * Dxi(i, j);
      ax.D2(i, j) = inv_j2 * Dxi2(i, j) + coef1 * Dxi(i, j);
    }
  }
  ax.w = quad_weights(ax);
  return ax;
}

Vector quad_weights(const MappedAxis& axis) {
  const int N = axis.N;
  Vector w(N + 1);
  for (int j = 0; j <= N; ++j) {
    const double s = std::sqrt(std::max(0.0, 1.0 - axis.xi[j] * axis.xi[j]));
    double wj = M_PI / N * s * axis.jac[j];
    if (j == 0 || j == N) wj *= 0.5;  // endpoint factor; zero either way
    w[j] = wj;
  }
  return w;
}

TensorGrid make_grid(const MappedAxis& ax, const MappedAxis& ay, const MappedAxis& az) {
  TensorGrid g;
  g.ax = ax;
  g.ay = ay;
  g.az = az;
  g.w3.resize(g.npoints());
  for (int iz = 0; iz < az.npoints(); ++iz)
    for (int iy = 0; iy < ay.npoints(); ++iy)
      for (int ix = 0; ix < ax.npoints(); ++ix)
        g.w3[g.flat(ix, iy, iz)] = ax.w[ix] * ay.w[iy] * az.w[iz];
  return g;
}

TensorGrid make_grid(int N, double a, double L) {
  const MappedAxis axis = map_axis(N, a, L);
  return make_grid(axis, axis, axis);
}

Vector TensorGrid::restrict_interior(const Vector& full) const {
  if (full.size() != npoints()) throw shape_error("restrict_interior: size mismatch");
  Vector out(ninterior());
  for (int iz = 1; iz < az.N; ++iz)
    for (int iy = 1; iy < ay.N; ++iy)
      for (int ix = 1; ix < ax.N; ++ix)
        out[interior_flat(ix - 1, iy - 1, iz - 1)] = full[flat(ix, iy, iz)];
  return out;
}

Vector TensorGrid::extend_interior(const Vector& interior) const {
  if (interior.size() != ninterior()) throw shape_error("extend_interior: size mismatch");
  Vector out = Vector::Zero(npoints());
  for (int iz = 1; iz < az.N; ++iz)
    for (int iy = 1; iy < ay.N; ++iy)
      for (int ix = 1; ix < ax.N; ++ix)
        out[flat(ix, iy, iz)] = interior[interior_flat(ix - 1, iy - 1, iz - 1)];
  return out;
}

Vector TensorGrid::interior_weights() const {
  Vector out(ninterior());
  for (int iz = 1; iz < az.N; ++iz)
    for (int iy = 1; iy < ay.N; ++iy)
      for (int ix = 1; ix < ax.N; ++ix)
        out[interior_flat(ix - 1, iy - 1, iz - 1)] = w3[flat(ix, iy, iz)];
  return out;
}

std::string TensorGrid::manifest() const {
  std::ostringstream os;
  os.precision(17);
  os << "ordering: x-fastest\n";
  const MappedAxis* axes[3] = {&ax, &ay, &az};
  const char* name[3] = {"x", "y", "z"};
  for (int d = 0; d < 3; ++d) {
    os << "axis_" << name[d] << ": N=" << axes[d]->N << " a=" << axes[d]->a
       << " L=" << axes[d]->L << "\n";
  }
  return os.str();
}

double tensor_inner(const Vector& f, const Vector& g, const TensorGrid& grid) {
  if (f.size() != grid.npoints() || g.size() != grid.npoints())
    throw shape_error("tensor_inner: field size does not match grid");
  double s = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) s += f[i] * g[i] * grid.w3[i];
  return s;
}

double tensor_inner_interior(const Vector& f, const Vector& g, const TensorGrid& grid) {
  if (f.size() != grid.ninterior() || g.size() != grid.ninterior())
    throw shape_error("tensor_inner_interior: field size does not match grid interior");
  const Vector w = grid.interior_weights();
  double s = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) s += f[i] * g[i] * w[i];
  return s;
}

Vector apply_along_axis(const Matrix& A, const Vector& field, const TensorGrid& grid, int axis) {
  const int nx = grid.ax.npoints(), ny = grid.ay.npoints(), nz = grid.az.npoints();
  if (field.size() != grid.npoints()) throw shape_error("apply_along_axis: size mismatch");
  Vector out(field.size());
  if (axis == 0) {
    if (A.rows() != nx || A.cols() != nx) throw shape_error("apply_along_axis: matrix/axis mismatch");
    Eigen::Map<const Matrix> F(field.data(), nx, ny * nz);
    Eigen::Map<Matrix> O(out.data(), nx, ny * nz);
    O.noalias() = A * F;
  } else if (axis == 1) {
    if (A.rows() != ny || A.cols() != ny) throw shape_error("apply_along_axis: matrix/axis mismatch");
    for (int iz = 0; iz < nz; ++iz) {
      Eigen::Map<const Matrix> F(field.data() + static_cast<std::ptrdiff_t>(iz) * nx * ny, nx, ny);
      Eigen::Map<Matrix> O(out.data() + static_cast<std::ptrdiff_t>(iz) * nx * ny, nx, ny);
      O.noalias() = F * A.transpose();
    }
  } else if (axis == 2) {
    if (A.rows() != nz || A.cols() != nz) throw shape_error("apply_along_axis: matrix/axis mismatch");
    Eigen::Map<const Matrix> F(field.data(), nx * ny, nz);
    Eigen::Map<Matrix> O(out.data(), nx * ny, nz);
    O.noalias() = F * A.transpose();
  } else {
    throw std::invalid_argument("apply_along_axis: axis must be 0, 1, or 2");
  }
  return out;
}

}  // namespace zk
