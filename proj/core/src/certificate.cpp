#include "zk/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zk {

AngleTable angle_table(const VirialOperator& op, const SpectrumReport& report) {
  AngleTable t;
  const Vector qn = op.q_interior() / op.wnorm(op.q_interior());
  const Vector qxn = op.qx_interior() / op.wnorm(op.qx_interior());
  for (const EigenPair& p : report.pairs) {
    AngleEntry e;
    e.lambda = p.lambda;
    e.angle_q = op.winner(qn, p.phi);
    e.angle_qx = op.winner(qxn, p.phi);
    e.parity_score = parity_score(op, p.phi, e.is_even);
    t.entries.push_back(e);
  }
  return t;
}

double angle_bound(double lambda1, double lambda_perp, double cos_beta) {
  if (!(lambda_perp > lambda1))
    throw std::invalid_argument("angle_bound: requires lambda_perp > lambda1");
  if (!(std::abs(cos_beta) <= 1.0))
    throw std::invalid_argument("angle_bound: requires |cos_beta| <= 1");
  const double sin2 = 1.0 - cos_beta * cos_beta;
  return lambda_perp - (lambda_perp - lambda1) * sin2;
}

Certificate certify(const VirialOperator& op, const SpectrumReport& report,
                    double lambda_perp, double parity_tol) {
  Certificate cert;
  cert.lambda_perp = lambda_perp;
  cert.provenance = op.manifest() + "method: " + report.method + "\n";

  struct SectorState {
    std::vector<std::pair<double, const EigenPair*>> pairs;  // halved eigenvalues
  } even, odd;

  for (const EigenPair& p : report.pairs) {
    bool is_even = false;
    const double score = parity_score(op, p.phi, is_even);
    if (score > parity_tol)
      throw solver_error("certify: eigenfunction at lambda=" + std::to_string(p.lambda) +
                         " has no definite x-parity (score " + std::to_string(score) +
                         "); spectrum looks unconverged or spurious");
    const double half = 0.5 * p.lambda;  // B+P scale
    (is_even ? even : odd).pairs.emplace_back(half, &p);
  }

  const Vector qn = op.q_interior() / op.wnorm(op.q_interior());
  const Vector qxn = op.qx_interior() / op.wnorm(op.qx_interior());

  auto sector_bound = [&](SectorState& s, const Vector& constraint) {
    SectorBound b;
    std::sort(s.pairs.begin(), s.pairs.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    // only sub-threshold eigenvalues matter for the bound
    std::vector<std::pair<double, const EigenPair*>> below;
    for (auto& pr : s.pairs)
      if (pr.first < lambda_perp) below.push_back(pr);
    if (below.empty()) {
      b.has_eigenvalue = false;
      b.floor = lambda_perp;
      b.bound = lambda_perp;
      return b;
    }
    b.has_eigenvalue = true;
    b.lambda1 = below[0].first;
    b.cos_beta = std::abs(op.winner(constraint, below[0].second->phi));
    b.cos_beta = std::min(b.cos_beta, 1.0);
    // Sector floor: a second sub-threshold eigenvalue lowers the part of the
    // spectrum orthogonal to the ground pair.
    b.floor = below.size() > 1 ? std::min(lambda_perp, below[1].first) : lambda_perp;
    b.bound = angle_bound(b.lambda1, b.floor, b.cos_beta);
    return b;
  };

  cert.even_sector = sector_bound(even, qn);
  cert.odd_sector = sector_bound(odd, qxn);
  cert.min_bound = std::min(cert.even_sector.bound, cert.odd_sector.bound);
  cert.positive = cert.min_bound > 0.0;

  std::ostringstream notes;
  if (cert.odd_sector.has_eigenvalue) {
    const double l2 = cert.odd_sector.lambda1;
    notes << "second eigenvalue used as +" << l2
          << " (a sign-flipped reading -" << l2 << " would make lambda_perp - lambda2 = "
          << lambda_perp + l2 << "); ";
  }
  notes << "sector pairing determined from computed parity, not from labels";
  cert.notes = notes.str();
  return cert;
}

std::string to_text(const Certificate& cert) {
  std::ostringstream os;
  os.precision(10);
  auto sector = [&](const char* name, const SectorBound& b) {
    os << "sector_" << name << ":\n";
    if (b.has_eigenvalue) {
      os << "  lambda1: " << b.lambda1 << "\n"
         << "  cos_beta: " << b.cos_beta << "\n"
         << "  floor: " << b.floor << "\n";
    } else {
      os << "  lambda1: none-below-threshold\n";
    }
    os << "  bound: " << b.bound << "\n";
  };
  os << "certificate:\n";
  os << "lambda_perp: " << cert.lambda_perp << "\n";
  sector("even", cert.even_sector);
  sector("odd", cert.odd_sector);
  os << "min_bound: " << cert.min_bound << "\n";
  os << "positive: " << (cert.positive ? "true" : "false") << "\n";
  os << "notes: " << cert.notes << "\n";
  os << "provenance:\n";
  std::istringstream prov(cert.provenance);
  std::string line;
  while (std::getline(prov, line)) os << "  " << line << "\n";
  return os.str();
}

std::string spectrum_to_text(const SpectrumReport& report, const AngleTable& table) {
  std::ostringstream os;
  os.precision(10);
  os << "spectrum-report:\n";
  os << "method: " << report.method << "\n";
  os << "threshold: " << report.threshold << "\n";
  os << "interp_error: " << report.interp_error << "\n";
  os << "complete: " << (report.complete ? "true" : "false") << "\n";
  for (size_t i = 0; i < report.pairs.size(); ++i) {
    const EigenPair& p = report.pairs[i];
    os << "pair " << i << ": lambda=" << p.lambda << " residual=" << p.residual
       << " imag=" << p.imag_part;
    if (i < table.entries.size()) {
      const AngleEntry& e = table.entries[i];
      os << " parity=" << (e.is_even ? "even" : "odd") << " parity_score=" << e.parity_score
         << " angle_q=" << e.angle_q << " angle_qx=" << e.angle_qx;
    }
    os << "\n";
  }
  for (const std::string& w : report.warnings) os << "warning: " << w << "\n";
  os << "provenance:\n";
  std::istringstream prov(report.provenance);
  std::string line;
  while (std::getline(prov, line)) os << "  " << line << "\n";
  return os.str();
}

std::string spectrum_to_csv(const SpectrumReport& report, const AngleTable& table) {
  std::ostringstream os;
  os.precision(17);
  os << "index,lambda,residual,imag_part,parity,parity_score,angle_q,angle_qx\r\n";
  for (size_t i = 0; i < report.pairs.size(); ++i) {
    const EigenPair& p = report.pairs[i];
    os << i << "," << p.lambda << "," << p.residual << "," << p.imag_part;
    if (i < table.entries.size()) {
      const AngleEntry& e = table.entries[i];
      os << "," << (e.is_even ? "even" : "odd") << "," << e.parity_score << "," << e.angle_q
         << "," << e.angle_qx;
    } else {
      os << ",,,,";
    }
    os << "\r\n";
  }
  return os.str();
}

}  // namespace zk
