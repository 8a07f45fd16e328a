#pragma once

#include "zk/types.hpp"

#include <string>
#include <vector>

namespace zk {

/// Chebyshev-Gauss-Lobatto nodes xi_j = cos(j pi / N), j = 0..N, descending.
/// Built symmetrically so that xi_j = -xi_{N-j} holds exactly in floating
/// point (xi_{N/2} = 0 for even N).
Vector cgl_nodes(int N);

/// Spectral differentiation matrix on the CGL nodes (size (N+1)^2), exact
/// for polynomials of degree <= N.  Diagonal entries are the negated row
/// sums, which keeps D * const = 0 to rounding.
Matrix cheb_diff(int N);

/// One collocation axis mapped from xi in [-1,1] to x in [-L,L] by
/// x(xi) = L sinh(a xi)/sinh(a), which clusters nodes near the origin for
/// a of order a few.  Holds the mapped derivative matrices and the
/// quadrature weights for integrals over [-L, L].
struct MappedAxis {
  int N = 0;        // polynomial degree; N+1 nodes
  double a = 0.0;   // mapping steepness
  double L = 0.0;   // half-width
  Vector xi;        // CGL nodes, descending
  Vector x;         // mapped nodes, descending; x(0)=L, x(N)=-L
  Vector jac;       // x_xi at the nodes, > 0
  Matrix D1;        // mapped d/dx
  Matrix D2;        // mapped d2/dx2 (chain rule, not D1*D1)
  Vector w;         // quadrature weights for integral over [-L,L]

  int npoints() const { return N + 1; }
  int ninterior() const { return N - 1; }
};

/// Build a mapped axis.  D1 = diag(1/x_xi) Dxi and
/// D2 = diag(1/x_xi^2) Dxi^2 + diag(-x_xixi / x_xi^3) Dxi, with the mapping
/// Jacobian computed analytically.  Weights are
/// w_j = (pi/N) sqrt(1 - xi_j^2) x_xi(xi_j), halved at the endpoints (where
/// the sqrt factor vanishes anyway, so the endpoint weights are zero).
MappedAxis map_axis(int N, double a, double L);

/// Recompute the quadrature weights of an axis (exposed mainly for tests).
Vector quad_weights(const MappedAxis& axis);

/// Tensor product of three mapped axes.  Fields are flattened x-fastest:
/// flat = ix + (Nx+1) * (iy + (Ny+1) * iz).  Interior refers to the nodes
/// with 1 <= i <= N-1 along every axis (Dirichlet rows/columns removed),
/// flattened in the same order.
struct TensorGrid {
  MappedAxis ax, ay, az;
  Vector w3;  // tensor quadrature weights, full grid, x-fastest

  int npoints() const { return ax.npoints() * ay.npoints() * az.npoints(); }
  int ninterior() const { return ax.ninterior() * ay.ninterior() * az.ninterior(); }

  int flat(int ix, int iy, int iz) const {
    return ix + ax.npoints() * (iy + ay.npoints() * iz);
  }
  int interior_flat(int ix, int iy, int iz) const {
    return ix + ax.ninterior() * (iy + ay.ninterior() * iz);
  }

  /// Coordinates of a full-grid node.
  Double3 coord(int ix, int iy, int iz) const {
    return {ax.x[ix], ay.x[iy], az.x[iz]};
  }

  /// Keep only interior nodes of a full-grid field.
  Vector restrict_interior(const Vector& full) const;
  /// Zero-extend an interior field to the full grid.
  Vector extend_interior(const Vector& interior) const;
  /// Interior part of the tensor quadrature weights.
  Vector interior_weights() const;

  /// Short text manifest (N, a, L per axis plus the ordering tag).
  std::string manifest() const;
};

TensorGrid make_grid(const MappedAxis& ax, const MappedAxis& ay, const MappedAxis& az);
TensorGrid make_grid(int N, double a, double L);  // same axis three times

/// Quadrature inner product sum_ijk f g w3 over the full grid.
double tensor_inner(const Vector& f, const Vector& g, const TensorGrid& grid);

/// Same sum restricted to interior nodes (fields indexed by interior flat
/// index).  The boundary weights are zero, so this agrees with the
/// full-grid inner product of the zero-extended fields.
double tensor_inner_interior(const Vector& f, const Vector& g, const TensorGrid& grid);

/// Apply a per-axis matrix to a full-grid field along one axis
/// (axis 0 = x, 1 = y, 2 = z).  The matrix must be (n x n) with n the node
/// count of that axis.
Vector apply_along_axis(const Matrix& A, const Vector& field, const TensorGrid& grid, int axis);

}  // namespace zk
