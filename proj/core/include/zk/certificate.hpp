#pragma once

#include "zk/eig.hpp"
#include "zk/types.hpp"
#include "zk/virial.hpp"

#include <string>
#include <vector>

namespace zk {

/// Inner products of each normalized eigenfunction against Q/||Q|| and
/// Q_x/||Q_x|| in the quadrature inner product, with per-eigenfunction
/// parity.  Signs are reported as computed; only magnitudes are
/// contractual (the sign of an eigenfunction is arbitrary).
struct AngleEntry {
  double lambda = 0.0;       // doubled-operator eigenvalue
  double angle_q = 0.0;      // <Q/||Q||, phi>_w
  double angle_qx = 0.0;     // <Q_x/||Q_x||, phi>_w
  bool is_even = false;      // x-parity of phi
  double parity_score = 0.0; // min(||phi -/+ flip||)/||phi||
};

struct AngleTable {
  std::vector<AngleEntry> entries;
};

AngleTable angle_table(const VirialOperator& op, const SpectrumReport& report);

/// Constrained lower bound from a single orthogonality constraint at angle
/// beta to the ground eigenfunction of the sector:
///   bound = lambda_perp - (lambda_perp - lambda1) (1 - cos_beta^2).
/// Preconditions: lambda_perp > lambda1 and |cos_beta| <= 1.
double angle_bound(double lambda1, double lambda_perp, double cos_beta);

struct SectorBound {
  bool has_eigenvalue = false;  // any sector eigenvalue below lambda_perp
  double lambda1 = 0.0;         // lowest sector eigenvalue, B+P scale
  double cos_beta = 0.0;        // |angle| against the sector constraint vector
  double floor = 0.0;           // effective lambda_perp used (sector floor)
  double bound = 0.0;
};

/// Positivity certificate for the halved (B+P-scale) operator under the
/// two orthogonality constraints.  Eigenvalues are halved, split by
/// x-parity, and each sector is paired with the constraint vector of its
/// own parity (Q in the even sector, Q_x in the odd one).  A sector with
/// no sub-threshold eigenvalue gets the raw bound lambda_perp.  If a
/// sector holds further eigenvalues below lambda_perp beyond the lowest,
/// the effective floor is lowered to the second one, which keeps the bound
/// sound.  Certification aborts (solver_error) when an eigenfunction has
/// no definite parity -- the signature of an unconverged or spurious pair.
struct Certificate {
  SectorBound even_sector, odd_sector;
  double lambda_perp = 0.5;
  double min_bound = 0.0;
  bool positive = false;
  std::string provenance;  // operator manifest + method
  std::string notes;       // e.g. the dual sign reading of the second eigenvalue
};

Certificate certify(const VirialOperator& op, const SpectrumReport& report,
                    double lambda_perp = 0.5, double parity_tol = 1e-6);

/// Human/machine-readable single-record renderings.
std::string to_text(const Certificate& cert);
std::string spectrum_to_text(const SpectrumReport& report, const AngleTable& table);
std::string spectrum_to_csv(const SpectrumReport& report, const AngleTable& table);

}  // namespace zk
