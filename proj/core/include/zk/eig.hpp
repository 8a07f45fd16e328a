#pragma once

#include "zk/types.hpp"
#include "zk/virial.hpp"

#include <string>
#include <vector>

namespace zk {

enum class EigMethod { Dense, ShiftInvert };
std::string to_string(EigMethod m);

/// One converged eigenpair of the discretized operator.  phi is the
/// interior eigenfunction with unit quadrature norm; residual is
/// ||M phi - lambda phi||_w; imag_part records the magnitude of the
/// discarded imaginary component of the raw eigenvalue.
struct EigenPair {
  double lambda = 0.0;
  Vector phi;
  double residual = 0.0;
  double imag_part = 0.0;
};

struct SpectrumReport {
  std::vector<EigenPair> pairs;  // sorted ascending by lambda
  double threshold = 1.0;
  double interp_error = 0.0;     // ground-state interpolation error on this grid
  std::string method;
  std::string provenance;        // operator manifest
  std::vector<std::string> warnings;
  bool complete = true;          // false when Arnoldi gave up with partial results
};

struct ShiftInvertOptions {
  std::vector<double> shifts{-0.2, 0.3, 0.8};
  int krylov = 40;          // Arnoldi steps per (re)start
  int max_restarts = 3;
  double ritz_tol = 1e-9;   // residual acceptance, verified on the original operator
  double imag_tol = 1e-8;   // relative imaginary tolerance on eigenvalues
  double dedup_tol = 1e-8;  // absolute eigenvalue deduplication tolerance
  long dense_cap = 50000;   // hard cap on the dense-factorization dimension
  double mem_budget_bytes = 6.0e9;  // above this, inner solves go iterative
  double gmres_tol = 1e-12;
  int gmres_restart = 60;
  int gmres_max_iter = 1200;
  unsigned long long seed = 0x5eedULL;
};

/// All real eigenvalues below `threshold` (up to k of them), each with a
/// normalized eigenfunction and a residual.
///
/// Dense: full eigendecomposition of to_dense(dense_cap).
/// ShiftInvert: real Arnoldi on (M - sigma I)^{-1} for each shift, one
/// factorization per shift, Ritz values mapped back, deduplicated across
/// shifts, residual-verified against the original operator.  When the
/// dense factorization would exceed the dimension cap or the memory
/// budget, the inner solves switch to GMRES preconditioned by the exact
/// inverse of the separable part (Kronecker-sum eigenbasis of the three
/// axis blocks), which is computed once and shared across shifts.
SpectrumReport eigs_below(const VirialOperator& op, double threshold = 1.0, int k = 8,
                          EigMethod method = EigMethod::Dense,
                          const ShiftInvertOptions& opts = {}, int dense_cap = 4096);

/// Recompute ||M phi - lambda phi||_w with the matrix-free apply.
double verify_pair(const VirialOperator& op, const EigenPair& pair);

/// min(||phi - flip|| , ||phi + flip||) / ||phi|| in the quadrature norm;
/// small means definite x-parity.  Returns the score and sets is_even.
double parity_score(const VirialOperator& op, const Vector& phi, bool& is_even);

}  // namespace zk
