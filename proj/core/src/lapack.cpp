#include "zk/lapack.hpp"

#include <lapacke.h>

#include <string>

namespace zk::lapack {

namespace {

void check_info(lapack_int info, const char* fn) {
  if (info != 0)
    throw solver_error(std::string(fn) + " failed with info=" + std::to_string(info));
}

}  // namespace

EigenResult eig_general(Matrix a) {
  if (a.rows() != a.cols()) throw shape_error("eig_general: matrix must be square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EigenResult r;
  r.wr.resize(n);
  r.wi.resize(n);
  r.vr.resize(n, n);
  lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n,
                                  r.wr.data(), r.wi.data(), nullptr, 1, r.vr.data(), n);
  check_info(info, "dgeev");
  return r;
}

LuSolver::LuSolver(Matrix a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols()) throw shape_error("LuSolver: matrix must be square");
  const lapack_int n = static_cast<lapack_int>(lu_.rows());
  ipiv_.resize(n);
  lapack_int info = LAPACKE_dgetrf(LAPACK_COL_MAJOR, n, n, lu_.data(), n, ipiv_.data());
  check_info(info, "dgetrf");
}

Vector LuSolver::solve(const Vector& b) const {
  if (b.size() != lu_.rows()) throw shape_error("LuSolver::solve: size mismatch");
  Vector x = b;
  const lapack_int n = static_cast<lapack_int>(lu_.rows());
  lapack_int info = LAPACKE_dgetrs(LAPACK_COL_MAJOR, 'N', n, 1, lu_.data(), n,
                                   ipiv_.data(), x.data(), n);
  check_info(info, "dgetrs");
  return x;
}

BandSolver::BandSolver(const Matrix& band, int kl, int ku) : kl_(kl), ku_(ku) {
  n_ = static_cast<int>(band.rows());
  if (band.cols() != kl + ku + 1) throw shape_error("BandSolver: band width mismatch");
  const int ldab = 2 * kl + ku + 1;
  ab_.assign(static_cast<size_t>(ldab) * n_, 0.0);
  // LAPACK band storage: AB(kl+ku+i-j, j) = A(i, j), column-major.
  for (int i = 0; i < n_; ++i) {
    for (int d = 0; d <= kl + ku; ++d) {
      const int j = i + d - kl;
      if (j < 0 || j >= n_) continue;
      ab_[static_cast<size_t>(j) * ldab + (kl + ku + i - j)] = band(i, d);
    }
  }
  ipiv_.resize(n_);
  lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, ab_.data(), ldab, ipiv_.data());
  check_info(info, "dgbtrf");
}

Vector BandSolver::solve(const Vector& b) const {
  if (b.size() != n_) throw shape_error("BandSolver::solve: size mismatch");
  Vector x = b;
  const int ldab = 2 * kl_ + ku_ + 1;
  lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab_.data(), ldab,
                                   ipiv_.data(), x.data(), n_);
  check_info(info, "dgbtrs");
  return x;
}

}  // namespace zk::lapack
