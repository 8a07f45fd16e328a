#include "zk/virial.hpp"

#include <cmath>
#include <sstream>

namespace zk {

std::string to_string(PotentialVariant v) {
  return v == PotentialVariant::Derived ? "derived" : "paper-matrix";
}

PotentialVariant variant_from_string(const std::string& s) {
  if (s == "derived") return PotentialVariant::Derived;
  if (s == "paper-matrix") return PotentialVariant::PaperMatrix;
  throw config_error("unknown potential variant: '" + s + "' (expected derived|paper-matrix)");
}

namespace {

bool same_axis(const MappedAxis& a, const MappedAxis& b) {
  return a.N == b.N && a.a == b.a && a.L == b.L;
}

// Contraction of an interior field along one axis with an interior block.
Vector apply_interior_axis(const Matrix& A, const Vector& v, int nx, int ny, int nz, int axis) {
  Vector out(v.size());
  if (axis == 0) {
    Eigen::Map<const Matrix> F(v.data(), nx, ny * nz);
    Eigen::Map<Matrix> O(out.data(), nx, ny * nz);
    O.noalias() = A * F;
  } else if (axis == 1) {
    for (int iz = 0; iz < nz; ++iz) {
      Eigen::Map<const Matrix> F(v.data() + static_cast<std::ptrdiff_t>(iz) * nx * ny, nx, ny);
      Eigen::Map<Matrix> O(out.data() + static_cast<std::ptrdiff_t>(iz) * nx * ny, nx, ny);
      O.noalias() = F * A.transpose();
    }
  } else {
    Eigen::Map<const Matrix> F(v.data(), nx * ny, nz);
    Eigen::Map<Matrix> O(out.data(), nx * ny, nz);
    O.noalias() = F * A.transpose();
  }
  return out;
}

}  // namespace

VirialOperator build_virial(const TensorGrid& grid, const GroundStateField& Q,
                            PotentialVariant variant, double proj_factor) {
  if (Q.grid == nullptr ||
      !same_axis(Q.grid->ax, grid.ax) || !same_axis(Q.grid->ay, grid.ay) ||
      !same_axis(Q.grid->az, grid.az) || Q.values.size() != grid.npoints())
    throw shape_error("build_virial: ground state was lifted on a different grid");

  VirialOperator op;
  op.grid_ = &grid;
  op.variant_ = variant;
  op.proj_factor_ = proj_factor;

  // Full-grid potential, then restriction.
  const int np = grid.npoints();
  Vector Vfull(np), g1f(np), f1f(np);
  for (int iz = 0; iz < grid.az.npoints(); ++iz)
    for (int iy = 0; iy < grid.ay.npoints(); ++iy)
      for (int ix = 0; ix < grid.ax.npoints(); ++ix) {
        const int k = grid.flat(ix, iy, iz);
        const double x = grid.ax.x[ix];
        const double q = Q.values[k];
        const double qx = Q.values_dx[k];
        Vfull[k] = (variant == PotentialVariant::Derived)
                       ? 1.0 - 2.0 * q - 2.0 * x * qx
                       : 1.0 - 3.0 * q * q - 6.0 * x * q * qx;
        g1f[k] = q * qx;
        f1f[k] = x * q;
      }
  op.V_ = grid.restrict_interior(Vfull);
  op.g1_ = grid.restrict_interior(g1f);
  op.f1_ = grid.restrict_interior(f1f);
  op.g2_ = op.f1_;
  op.f2_ = op.g1_;
  op.wint_ = grid.interior_weights();
  op.qq_ = tensor_inner(Q.values, Q.values, grid);
  op.proj_scale_ = proj_factor / op.qq_;
  op.q_int_ = grid.restrict_interior(Q.values);
  op.qx_int_ = grid.restrict_interior(Q.values_dx);

  op.D2x_ = grid.ax.D2.block(1, 1, grid.ax.ninterior(), grid.ax.ninterior());
  op.D2y_ = grid.ay.D2.block(1, 1, grid.ay.ninterior(), grid.ay.ninterior());
  op.D2z_ = grid.az.D2.block(1, 1, grid.az.ninterior(), grid.az.ninterior());
  return op;
}

Vector VirialOperator::apply(const Vector& v) const {
  const int nx = grid_->ax.ninterior(), ny = grid_->ay.ninterior(), nz = grid_->az.ninterior();
  if (v.size() != static_cast<Eigen::Index>(nx) * ny * nz)
    throw shape_error("VirialOperator::apply: interior field size mismatch");
  Vector y = -3.0 * apply_interior_axis(D2x_, v, nx, ny, nz, 0);
  y -= apply_interior_axis(D2y_, v, nx, ny, nz, 1);
  y -= apply_interior_axis(D2z_, v, nx, ny, nz, 2);
  y.array() += V_.array() * v.array();
  const double s1 = (v.array() * f1_.array() * wint_.array()).sum();
  const double s2 = (v.array() * f2_.array() * wint_.array()).sum();
  y += proj_scale_ * s1 * g1_;
  y += proj_scale_ * s2 * g2_;
  return y;
}

Matrix VirialOperator::to_dense(int cap) const {
  const int nx = grid_->ax.ninterior(), ny = grid_->ay.ninterior(), nz = grid_->az.ninterior();
  const long n = static_cast<long>(nx) * ny * nz;
  if (n <= 0) throw shape_error("VirialOperator::to_dense: degenerate grid (empty interior)");
  if (n > cap)
    throw shape_error("VirialOperator::to_dense: interior dimension " + std::to_string(n) +
                      " exceeds cap " + std::to_string(cap));
  Matrix A = Matrix::Zero(n, n);
  for (int iz = 0; iz < nz; ++iz)
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        const long r = ix + static_cast<long>(nx) * (iy + static_cast<long>(ny) * iz);
        for (int jx = 0; jx < nx; ++jx)
          A(r, jx + static_cast<long>(nx) * (iy + static_cast<long>(ny) * iz)) -= 3.0 * D2x_(ix, jx);
        for (int jy = 0; jy < ny; ++jy)
          A(r, ix + static_cast<long>(nx) * (jy + static_cast<long>(ny) * iz)) -= D2y_(iy, jy);
        for (int jz = 0; jz < nz; ++jz)
          A(r, ix + static_cast<long>(nx) * (iy + static_cast<long>(ny) * jz)) -= D2z_(iz, jz);
        A(r, r) += V_[r];
      }
  // Rank-2 projection: g * (w .* f)^T summed over the two pairs.
  A += proj_scale_ * g1_ * (wint_.array() * f1_.array()).matrix().transpose();
  A += proj_scale_ * g2_ * (wint_.array() * f2_.array()).matrix().transpose();
  return A;
}

double VirialOperator::winner(const Vector& u, const Vector& v) const {
  if (u.size() != wint_.size() || v.size() != wint_.size())
    throw shape_error("winner: interior field size mismatch");
  return (u.array() * v.array() * wint_.array()).sum();
}

double VirialOperator::wnorm(const Vector& v) const { return std::sqrt(winner(v, v)); }

Vector VirialOperator::flip_x(const Vector& v) const {
  const int nx = grid_->ax.ninterior(), ny = grid_->ay.ninterior(), nz = grid_->az.ninterior();
  if (v.size() != static_cast<Eigen::Index>(nx) * ny * nz)
    throw shape_error("flip_x: interior field size mismatch");
  Vector out(v.size());
  for (int iz = 0; iz < nz; ++iz)
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        out[grid_->interior_flat(ix, iy, iz)] = v[grid_->interior_flat(nx - 1 - ix, iy, iz)];
  return out;
}

std::string VirialOperator::manifest() const {
  std::ostringstream os;
  os.precision(17);
  os << "operator: doubled-virial\n"
     << "variant: " << to_string(variant_) << "\n"
     << "projection_factor: " << proj_factor_ << "\n"
     << "qq: " << qq_ << "\n"
     << "threshold: " << threshold_ << "\n"
     << grid_->manifest();
  return os.str();
}

VirialCheck check_virial(const VirialOperator& op) {
  const TensorGrid& g = op.grid();
  VirialCheck c;
  const double Lmax = std::max({g.ax.L, g.ay.L, g.az.L});
  const double rcut = 0.9 * std::sqrt(3.0) * Lmax;
  c.potential_decays = true;
  for (int iz = 1; iz < g.az.N; ++iz)
    for (int iy = 1; iy < g.ay.N; ++iy)
      for (int ix = 1; ix < g.ax.N; ++ix) {
        const Double3 p = g.coord(ix, iy, iz);
        const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        if (r <= rcut) continue;
        const double v = op.potential()[g.interior_flat(ix - 1, iy - 1, iz - 1)];
        if (std::abs(v - 1.0) >= 1e-6) c.potential_decays = false;
      }
  const Vector Vf = op.flip_x(op.potential());
  c.potential_even_x = (Vf - op.potential()).cwiseAbs().maxCoeff() <
                       1e-10 * op.potential().cwiseAbs().maxCoeff();
  const Vector g1f = op.flip_x(op.g1());
  const Vector f1f = op.flip_x(op.f1());
  const double s1 = (g1f + op.g1()).cwiseAbs().maxCoeff();
  const double s2 = (f1f + op.f1()).cwiseAbs().maxCoeff();
  const double scale = std::max(op.g1().cwiseAbs().maxCoeff(), op.f1().cwiseAbs().maxCoeff());
  c.projections_odd_x = s1 < 1e-10 * scale && s2 < 1e-10 * scale;
  return c;
}

}  // namespace zk
