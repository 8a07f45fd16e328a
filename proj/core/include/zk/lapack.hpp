#pragma once

#include "zk/types.hpp"

#include <vector>

namespace zk::lapack {

/// Eigendecomposition of a real general matrix (dgeev).  Right eigenvectors
/// are returned in LAPACK's packed real format: for a complex conjugate
/// pair (wr[j] +- i wi[j]) the columns j and j+1 hold the real and
/// imaginary parts.
struct EigenResult {
  Vector wr;    // real parts
  Vector wi;    // imaginary parts
  Matrix vr;    // right eigenvectors, packed
};

EigenResult eig_general(Matrix a);

/// One-time LU factorization of a general square matrix with repeated
/// solves (dgetrf / dgetrs).  The factorization overwrites the input matrix
/// in place, so the peak memory is a single n^2 buffer.
class LuSolver {
 public:
  explicit LuSolver(Matrix a);
  Vector solve(const Vector& b) const;
  Eigen::Index size() const { return lu_.rows(); }

 private:
  Matrix lu_;
  std::vector<int> ipiv_;
};

/// Banded LU factorization with repeated solves (dgbtrf / dgbtrs).
/// The matrix is supplied row-wise through a dense band: band(i, d) is the
/// entry A(i, i + d - kl) for d = 0..kl+ku.
class BandSolver {
 public:
  BandSolver(const Matrix& band, int kl, int ku);
  Vector solve(const Vector& b) const;

 private:
  int n_ = 0, kl_ = 0, ku_ = 0;
  std::vector<double> ab_;
  std::vector<int> ipiv_;
};

}  // namespace zk::lapack
