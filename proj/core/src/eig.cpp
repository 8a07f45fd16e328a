#include "zk/eig.hpp"

#include "zk/lapack.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <random>
#include <sstream>

namespace zk {

std::string to_string(EigMethod m) {
  return m == EigMethod::Dense ? "dense" : "shift-invert";
}

namespace {

using Cplx = std::complex<double>;
using VectorC = Eigen::VectorXcd;
using MatrixC = Eigen::MatrixXcd;

// ---------------------------------------------------------------------------
// Inner solvers for (M - sigma I) x = b.

class InnerSolver {
 public:
  virtual ~InnerSolver() = default;
  virtual Vector solve(const Vector& b) const = 0;
  virtual std::string name() const = 0;
};

class DenseLuInner final : public InnerSolver {
 public:
  DenseLuInner(const VirialOperator& op, double sigma, long cap)
      : lu_([&] {
          Matrix A = op.to_dense(static_cast<int>(cap));
          A.diagonal().array() -= sigma;
          return A;
        }()) {}
  Vector solve(const Vector& b) const override { return lu_.solve(b); }
  std::string name() const override { return "dense-lu"; }

 private:
  lapack::LuSolver lu_;
};

// Exact inverse of the separable part K = -3 D2x (+) -D2y (+) -D2z + I via
// the eigenbases of the three interior blocks.  Shared by all shifts.
struct KronBasis {
  MatrixC Vx, Vxi, Vy, Vyi, Vz, Vzi;
  VectorC lx, ly, lz;
  int nx = 0, ny = 0, nz = 0;

  static KronBasis build(const VirialOperator& op) {
    KronBasis kb;
    const TensorGrid& g = op.grid();
    kb.nx = g.ax.ninterior();
    kb.ny = g.ay.ninterior();
    kb.nz = g.az.ninterior();
    auto decomp = [](const Matrix& A, MatrixC& V, MatrixC& Vi, VectorC& l) {
      Eigen::EigenSolver<Matrix> es(A);
      if (es.info() != Eigen::Success) throw solver_error("Kron basis: eigendecomposition failed");
      V = es.eigenvectors();
      l = es.eigenvalues();
      Vi = V.partialPivLu().solve(MatrixC::Identity(V.rows(), V.cols()));
    };
    const Matrix Ax = -3.0 * g.ax.D2.block(1, 1, kb.nx, kb.nx);
    const Matrix Ay = -1.0 * g.ay.D2.block(1, 1, kb.ny, kb.ny);
    const Matrix Az = -1.0 * g.az.D2.block(1, 1, kb.nz, kb.nz);
    decomp(Ax, kb.Vx, kb.Vxi, kb.lx);
    decomp(Ay, kb.Vy, kb.Vyi, kb.ly);
    decomp(Az, kb.Vz, kb.Vzi, kb.lz);
    return kb;
  }

  VectorC contract(const MatrixC& A, const VectorC& v, int axis) const {
    VectorC out(v.size());
    if (axis == 0) {
      Eigen::Map<const MatrixC> F(v.data(), nx, ny * nz);
      Eigen::Map<MatrixC> O(out.data(), nx, ny * nz);
      O.noalias() = A * F;
    } else if (axis == 1) {
      for (int iz = 0; iz < nz; ++iz) {
        Eigen::Map<const MatrixC> F(v.data() + static_cast<std::ptrdiff_t>(iz) * nx * ny, nx, ny);
        Eigen::Map<MatrixC> O(out.data() + static_cast<std::ptrdiff_t>(iz) * nx * ny, nx, ny);
        O.noalias() = F * A.transpose();
      }
    } else {
      Eigen::Map<const MatrixC> F(v.data(), nx * ny, nz);
      Eigen::Map<MatrixC> O(out.data(), nx * ny, nz);
      O.noalias() = F * A.transpose();
    }
    return out;
  }

  // (K - sigma)^{-1} b with K = Ax (+) Ay (+) Az + I.
  Vector solve(const Vector& b, double sigma) const {
    VectorC w = b.cast<Cplx>();
    w = contract(Vxi, w, 0);
    w = contract(Vyi, w, 1);
    w = contract(Vzi, w, 2);
    for (int iz = 0; iz < nz; ++iz)
      for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
          const std::ptrdiff_t k = ix + static_cast<std::ptrdiff_t>(nx) * (iy + static_cast<std::ptrdiff_t>(ny) * iz);
          w[k] /= lx[ix] + ly[iy] + lz[iz] + 1.0 - sigma;
        }
    w = contract(Vx, w, 0);
    w = contract(Vy, w, 1);
    w = contract(Vz, w, 2);
    return w.real();
  }
};

// Restarted GMRES on the left-preconditioned system
//   P^{-1} (M - sigma) x = P^{-1} b,   P = K - sigma.
class KronGmresInner final : public InnerSolver {
 public:
  KronGmresInner(const VirialOperator& op, const KronBasis& kb, double sigma,
                 const ShiftInvertOptions& opts)
      : op_(op), kb_(kb), sigma_(sigma), opts_(opts) {}

  Vector solve(const Vector& b) const override {
    const Vector pb = kb_.solve(b, sigma_);
    Vector x = Vector::Zero(b.size());
    const double target = opts_.gmres_tol * pb.norm();
    int iters = 0;
    while (iters < opts_.gmres_max_iter) {
      double resid = 0.0;
      x = gmres_cycle(pb, x, target, iters, resid);
      if (resid <= target || resid == 0.0) return x;
    }
    throw solver_error("shift-invert GMRES stagnated at shift sigma=" + std::to_string(sigma_));
  }

  std::string name() const override { return "kron-gmres"; }

 private:
  Vector apply_pre(const Vector& v) const {
    Vector mv = op_.apply(v);
    mv -= sigma_ * v;
    return kb_.solve(mv, sigma_);
  }

  // One GMRES(m) cycle from x0; returns the improved iterate.
  Vector gmres_cycle(const Vector& pb, const Vector& x0, double target, int& iters,
                     double& resid_out) const {
    const int m = opts_.gmres_restart;
    Vector r = pb - apply_pre(x0);
    double beta = r.norm();
    resid_out = beta;
    if (beta <= target || beta == 0.0) return x0;

    Matrix V(r.size(), m + 1);
    Matrix H = Matrix::Zero(m + 1, m);
    std::vector<double> cs(m), sn(m);
    Vector gamma = Vector::Zero(m + 1);
    V.col(0) = r / beta;
    gamma[0] = beta;

    int j = 0;
    for (; j < m && iters < opts_.gmres_max_iter; ++j, ++iters) {
      Vector w = apply_pre(V.col(j));
      for (int i = 0; i <= j; ++i) {
        H(i, j) = V.col(i).dot(w);
        w -= H(i, j) * V.col(i);
      }
      H(j + 1, j) = w.norm();
      if (H(j + 1, j) > 0.0) V.col(j + 1) = w / H(j + 1, j);

      // Apply accumulated Givens rotations, then form the new one.
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      const double denom = std::hypot(H(j, j), H(j + 1, j));
      if (denom == 0.0) { ++j; break; }
      cs[j] = H(j, j) / denom;
      sn[j] = H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      gamma[j + 1] = -sn[j] * gamma[j];
      gamma[j] = cs[j] * gamma[j];
      resid_out = std::abs(gamma[j + 1]);
      if (resid_out <= target) { ++j; break; }
    }
    // Solve the triangular system for the correction.
    Vector y(j);
    for (int i = j - 1; i >= 0; --i) {
      double s = gamma[i];
      for (int k2 = i + 1; k2 < j; ++k2) s -= H(i, k2) * y[k2];
      y[i] = s / H(i, i);
    }
    return x0 + V.leftCols(j) * y;
  }

  const VirialOperator& op_;
  const KronBasis& kb_;
  double sigma_;
  const ShiftInvertOptions& opts_;
};

// ---------------------------------------------------------------------------

void sort_and_cap(std::vector<EigenPair>& pairs, int k) {
  std::sort(pairs.begin(), pairs.end(),
            [](const EigenPair& a, const EigenPair& b) { return a.lambda < b.lambda; });
  if (static_cast<int>(pairs.size()) > k) pairs.resize(k);
}

void flag_near_multiples(SpectrumReport& rep, double tol) {
  for (size_t i = 1; i < rep.pairs.size(); ++i) {
    if (std::abs(rep.pairs[i].lambda - rep.pairs[i - 1].lambda) <= tol)
      rep.warnings.push_back("eigenvalues " + std::to_string(i - 1) + "," + std::to_string(i) +
                             " closer than the distinctness gap; flagged as multiple");
  }
}

SpectrumReport eigs_dense(const VirialOperator& op, double threshold, int k, int dense_cap) {
  SpectrumReport rep;
  rep.threshold = threshold;
  rep.method = "dense";
  rep.provenance = op.manifest();

  lapack::EigenResult er = lapack::eig_general(op.to_dense(dense_cap));
  const Eigen::Index n = er.wr.size();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (er.wi[j] != 0.0) {
      // complex conjugate pair occupies columns j, j+1
      if (er.wr[j] < threshold && std::abs(er.wi[j]) > 1e-8 * (1.0 + std::abs(er.wr[j]))) {
        rep.warnings.push_back("discarded complex eigenvalue " + std::to_string(er.wr[j]) +
                               " + " + std::to_string(er.wi[j]) + "i below threshold");
      }
      ++j;  // skip the conjugate partner
      continue;
    }
    if (er.wr[j] >= threshold) continue;
    EigenPair p;
    p.lambda = er.wr[j];
    p.imag_part = 0.0;
    p.phi = er.vr.col(j);
    const double nrm = op.wnorm(p.phi);
    if (nrm == 0.0) continue;
    p.phi /= nrm;
    p.residual = verify_pair(op, p);
    rep.pairs.push_back(std::move(p));
  }
  sort_and_cap(rep.pairs, k);
  flag_near_multiples(rep, 1e-8);
  return rep;
}

struct RitzCandidate {
  double lambda;
  double imag;
  Vector x;
};

// Arnoldi on OP = (M - sigma)^{-1}; returns Ritz candidates mapped back.
std::vector<RitzCandidate> arnoldi_candidates(const VirialOperator& op, const InnerSolver& inner,
                                              double sigma, int m, std::mt19937_64& rng,
                                              const std::vector<Vector>& locked) {
  const Eigen::Index n = op.grid().ninterior();
  m = static_cast<int>(std::min<Eigen::Index>(m, n));
  Matrix V(n, m + 1);
  Matrix H = Matrix::Zero(m + 1, m);

  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v0(n);
  for (Eigen::Index i = 0; i < n; ++i) v0[i] = gauss(rng);
  for (const Vector& u : locked) v0 -= u.dot(v0) / u.squaredNorm() * u;
  v0.normalize();
  V.col(0) = v0;

  int steps = m;
  for (int j = 0; j < m; ++j) {
    Vector w = inner.solve(V.col(j));
    for (const Vector& u : locked) w -= u.dot(w) / u.squaredNorm() * u;
    for (int pass = 0; pass < 2; ++pass) {  // MGS with one re-orth sweep
      for (int i = 0; i <= j; ++i) {
        const double hij = V.col(i).dot(w);
        if (pass == 0) H(i, j) = hij; else H(i, j) += hij;
        w -= hij * V.col(i);
      }
    }
    H(j + 1, j) = w.norm();
    if (H(j + 1, j) < 1e-14) { steps = j + 1; break; }
    V.col(j + 1) = w / H(j + 1, j);
  }

  Eigen::EigenSolver<Matrix> es(H.topLeftCorner(steps, steps));
  if (es.info() != Eigen::Success) throw solver_error("Arnoldi: Hessenberg eigensolve failed");

  std::vector<RitzCandidate> out;
  for (int i = 0; i < steps; ++i) {
    const Cplx theta = es.eigenvalues()[i];
    if (std::abs(theta) < 1e-12) continue;
    const Cplx lam = sigma + 1.0 / theta;
    RitzCandidate c;
    c.lambda = lam.real();
    c.imag = std::abs(lam.imag());
    const VectorC y = es.eigenvectors().col(i);
    c.x = (V.leftCols(steps) * y).real();
    if (c.x.norm() == 0.0) continue;
    out.push_back(std::move(c));
  }
  return out;
}

SpectrumReport eigs_shift_invert(const VirialOperator& op, double threshold, int k,
                                 const ShiftInvertOptions& opts) {
  SpectrumReport rep;
  rep.threshold = threshold;
  rep.method = "shift-invert";
  rep.provenance = op.manifest();

  const long n = op.grid().ninterior();
  const bool dense_ok = n <= opts.dense_cap &&
                        static_cast<double>(n) * static_cast<double>(n) * 8.0 <= opts.mem_budget_bytes;
  KronBasis kb;
  if (!dense_ok) {
    if (n > opts.dense_cap)
      rep.warnings.push_back("interior dimension exceeds the dense factorization cap; "
                             "using Kronecker-preconditioned GMRES inner solves");
    kb = KronBasis::build(op);
  }

  std::mt19937_64 rng(opts.seed);
  std::vector<EigenPair> accepted;
  std::vector<Vector> locked;

  for (double sigma0 : opts.shifts) {
    std::unique_ptr<InnerSolver> inner;
    double sigma = sigma0;
    for (int attempt = 0; attempt < 3 && !inner; ++attempt) {
      try {
        if (dense_ok)
          inner = std::make_unique<DenseLuInner>(op, sigma, opts.dense_cap);
        else
          inner = std::make_unique<KronGmresInner>(op, kb, sigma, opts);
      } catch (const solver_error&) {
        // Factorization hit a near-singular shift; nudge it and retry.
        sigma += 0.01 * (1.0 + std::abs(sigma)) * (attempt + 1);
      }
    }
    if (!inner) {
      rep.warnings.push_back("factorization failed near shift " + std::to_string(sigma0));
      rep.complete = false;
      continue;
    }

    for (int restart = 0; restart <= opts.max_restarts; ++restart) {
      std::vector<RitzCandidate> cands;
      try {
        cands = arnoldi_candidates(op, *inner, sigma, opts.krylov, rng, locked);
      } catch (const solver_error& e) {
        rep.warnings.push_back(std::string("Arnoldi failure at shift ") +
                               std::to_string(sigma) + ": " + e.what());
        rep.complete = false;
        break;
      }
      int newly = 0;
      for (RitzCandidate& c : cands) {
        if (c.lambda >= threshold) continue;
        if (c.imag > opts.imag_tol * (1.0 + std::abs(c.lambda))) {
          rep.warnings.push_back("discarded complex Ritz value " + std::to_string(c.lambda) +
                                 " +/- " + std::to_string(c.imag) + "i at shift " + std::to_string(sigma));
          continue;
        }
        bool dup = false;
        for (const EigenPair& p : accepted)
          if (std::abs(p.lambda - c.lambda) < opts.dedup_tol) dup = true;
        if (dup) continue;
        EigenPair p;
        p.lambda = c.lambda;
        p.imag_part = c.imag;
        p.phi = c.x / op.wnorm(c.x);
        p.residual = verify_pair(op, p);
        if (p.residual > opts.ritz_tol) continue;  // unconverged Ritz vector
        locked.push_back(c.x.normalized());
        accepted.push_back(std::move(p));
        ++newly;
      }
      if (newly == 0) break;  // this shift is exhausted
    }
  }

  rep.pairs = std::move(accepted);
  sort_and_cap(rep.pairs, k);
  flag_near_multiples(rep, opts.dedup_tol);
  return rep;
}

}  // namespace

SpectrumReport eigs_below(const VirialOperator& op, double threshold, int k, EigMethod method,
                          const ShiftInvertOptions& opts, int dense_cap) {
  if (k < 1) throw std::invalid_argument("eigs_below: k must be >= 1");
  if (op.grid().ninterior() <= 0) throw shape_error("eigs_below: degenerate grid");
  return method == EigMethod::Dense ? eigs_dense(op, threshold, k, dense_cap)
                                    : eigs_shift_invert(op, threshold, k, opts);
}

double verify_pair(const VirialOperator& op, const EigenPair& pair) {
  Vector r = op.apply(pair.phi);
  r -= pair.lambda * pair.phi;
  return op.wnorm(r);
}

double parity_score(const VirialOperator& op, const Vector& phi, bool& is_even) {
  const Vector f = op.flip_x(phi);
  const double se = op.wnorm(phi - f);
  const double so = op.wnorm(phi + f);
  is_even = se <= so;
  return std::min(se, so) / op.wnorm(phi);
}

}  // namespace zk
