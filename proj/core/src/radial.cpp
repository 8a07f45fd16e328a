#include "zk/radial.hpp"

#include "zk/lapack.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace zk {

namespace {

// Band-matrix form of Lr = -d2/dr2 - (2/r) d/dr + 1 over the unknowns
// R_0..R_{n-1} (R_n = 0 eliminated).  band(i, d) holds the coefficient of
// R_{i+d-kl} in row i.
struct RadialOperator {
  Matrix band;
  int kl = 0, ku = 0;
  int n = 0;

  Vector apply(const Vector& R) const {
    Vector out = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      for (int d = 0; d <= kl + ku; ++d) {
        const int j = i + d - kl;
        if (j < 0 || j >= n) continue;
        out[i] += band(i, d) * R[j];
      }
    }
    return out;
  }
};

RadialOperator build_operator(int n_r, double h, int fd_order) {
  RadialOperator op;
  op.n = n_r;  // unknowns 0..n_r-1
  const double h2 = h * h;
  if (fd_order == 2) {
    op.kl = op.ku = 1;
    op.band = Matrix::Zero(op.n, 3);
    // r = 0: -3 R''(0) + R(0) with mirror R_{-1} = R_1.
    op.band(0, 1) = 6.0 / h2 + 1.0;
    op.band(0, 2) = -6.0 / h2;
    for (int i = 1; i < n_r; ++i) {
      const double ri = i * h;
      op.band(i, 0) = -1.0 / h2 + 1.0 / (ri * h);
      op.band(i, 1) = 2.0 / h2 + 1.0;
      op.band(i, 2) = -1.0 / h2 - 1.0 / (ri * h);
    }
    return op;
  }
  if (fd_order != 4) throw std::invalid_argument("solve_radial: fd_order must be 2 or 4");
  op.kl = op.ku = 2;
  op.band = Matrix::Zero(op.n, 5);
  // Row 0: -3 R''(0) + R(0), symmetric stencil with mirrored ghosts.
  op.band(0, 2) = 90.0 / (12.0 * h2) + 1.0;
  op.band(0, 3) = -96.0 / (12.0 * h2);
  op.band(0, 4) = 6.0 / (12.0 * h2);
  // Row 1: mirror R_{-1} = R_1 in both stencils.
  {
    const double r1 = h;
    // -R'': -(-R_3 + 16 R_2 - 31 R_1 + 16 R_0) / (12 h^2)
    op.band(1, 1) += -16.0 / (12.0 * h2);           // R_0
    op.band(1, 2) += 31.0 / (12.0 * h2) + 1.0;      // R_1 (+ identity)
    op.band(1, 3) += -16.0 / (12.0 * h2);           // R_2
    op.band(1, 4) += 1.0 / (12.0 * h2);             // R_3
    // -(2/r) R': -(2/r1) (-R_3 + 8 R_2 - 8 R_0 + R_1) / (12 h)
    const double c = -2.0 / (r1 * 12.0 * h);
    op.band(1, 1) += c * (-8.0);
    op.band(1, 2) += c * 1.0;
    op.band(1, 3) += c * 8.0;
    op.band(1, 4) += c * (-1.0);
  }
  for (int i = 2; i < n_r - 1; ++i) {
    const double ri = i * h;
    // -(2/r) R' with R' = (R_{i-2} - 8 R_{i-1} + 8 R_{i+1} - R_{i+2}) / (12 h)
    const double c = -2.0 / (ri * 12.0 * h);
    op.band(i, 0) = 1.0 / (12.0 * h2) + c * 1.0;
    op.band(i, 1) = -16.0 / (12.0 * h2) + c * (-8.0);
    op.band(i, 2) = 30.0 / (12.0 * h2) + 1.0;
    op.band(i, 3) = -16.0 / (12.0 * h2) + c * 8.0;
    op.band(i, 4) = 1.0 / (12.0 * h2) + c * (-1.0);
  }
  // Last interior row: second-order stencil (the profile is ~e^{-r_max}
  // there, so the local order drop is immaterial).
  {
    const int i = n_r - 1;
    const double ri = i * h;
    op.band(i, 1) = -1.0 / h2 + 1.0 / (ri * h);
    op.band(i, 2) = 2.0 / h2 + 1.0;
    // R_{i+1} = 0 (Dirichlet)
  }
  return op;
}

// Trapezoid inner product with the radial measure r^2 dr over the unknowns.
double inner_r2(const Vector& f, const Vector& g, double h) {
  const int n = static_cast<int>(f.size());
  double s = 0.0;
  for (int i = 1; i < n; ++i) {
    const double ri = i * h;
    s += f[i] * g[i] * ri * ri;
  }
  return s * h;  // i = 0 carries zero measure; the Dirichlet node is zero
}

double simpson_r2(const Vector& vals, double h) {
  // vals over nodes 0..n; composite Simpson, trapezoid fallback on a
  // trailing odd panel.
  const int n = static_cast<int>(vals.size()) - 1;
  double s = 0.0;
  int last = (n % 2 == 0) ? n : n - 1;
  for (int i = 0; i + 2 <= last; i += 2)
    s += h / 3.0 * (vals[i] + 4.0 * vals[i + 1] + vals[i + 2]);
  if (last != n) s += h / 2.0 * (vals[n - 1] + vals[n]);
  return s;
}

}  // namespace

RadialProfile solve_radial(int p, double r_max, int n_r, double tol, int max_iter, int fd_order) {
  if (p < 2) throw std::invalid_argument("solve_radial: p must be an integer >= 2");
  if (!(r_max > 10.0)) throw std::invalid_argument("solve_radial: r_max must exceed 10");
  if (n_r < 200) throw std::invalid_argument("solve_radial: n_r must be >= 200");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_radial: tol must be positive");

  const double h = r_max / n_r;
  const RadialOperator op = build_operator(n_r, h, fd_order);
  const lapack::BandSolver factor(op.band, op.kl, op.ku);

  const double gamma = static_cast<double>(p) / (p - 1);
  Vector R(n_r);
  for (int i = 0; i < n_r; ++i) {
    const double ri = i * h;
    R[i] = std::exp(-ri * ri);
  }

  double residual = std::numeric_limits<double>::infinity();
  double stab = 0.0;
  int iters = 0;
  for (; iters <= max_iter; ++iters) {
    Vector Rp(n_r);
    for (int i = 0; i < n_r; ++i) Rp[i] = std::pow(std::abs(R[i]), p - 1) * R[i];
    const Vector LR = op.apply(R);
    const double num = inner_r2(LR, R, h);
    const double den = inner_r2(Rp, R, h);
    if (!(den > 0.0) || !std::isfinite(den) || !std::isfinite(num))
      throw solver_error("solve_radial: iteration collapsed (degenerate normalization)");
    const double S = num / den;
    residual = (LR - Rp).cwiseAbs().maxCoeff();
    stab = S;
    if (residual < tol && std::abs(S - 1.0) < tol) break;
    if (iters == max_iter)
      throw solver_error("solve_radial: no convergence after max_iter iterations "
                         "(residual=" + std::to_string(residual) + "); check r_max/n_r");
    R = std::pow(S, gamma) * factor.solve(Rp);
    if (R.cwiseAbs().maxCoeff() < 1e-8)
      throw solver_error("solve_radial: profile collapsed to zero");
  }

  RadialProfile profile;
  profile.p = p;
  profile.r_max = r_max;
  profile.r.resize(n_r + 1);
  for (int i = 0; i <= n_r; ++i) profile.r[i] = i * h;
  profile.R.resize(n_r + 1);
  profile.R.head(n_r) = R;
  profile.R[n_r] = 0.0;
  profile.residual = residual;
  profile.stab_factor = stab;
  profile.iterations = iters;
  return profile;
}

double radial_mass(const RadialProfile& profile) {
  const int n = static_cast<int>(profile.r.size()) - 1;
  const double h = profile.r[1] - profile.r[0];
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    s += w * profile.R[i] * profile.R[i] * profile.r[i] * profile.r[i];
  }
  return 4.0 * M_PI * s * h;
}

PohozaevReport pohozaev_report(const RadialProfile& profile) {
  const int n = static_cast<int>(profile.r.size()) - 1;
  const double h = profile.r[1] - profile.r[0];
  const Vector& R = profile.R;

  // Fourth-order derivative; even extension across r = 0.
  Vector dR(n + 1);
  auto at = [&](int i) { return R[std::abs(i)]; };
  for (int i = 0; i <= n; ++i) {
    if (i >= 2 && i <= n - 2) {
      dR[i] = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
    } else if (i < 2) {
      dR[i] = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
    } else if (i == n - 1) {
      dR[i] = (R[i + 1] - R[i - 1]) / (2.0 * h);
    } else {  // i == n
      dR[i] = (3.0 * R[n] - 4.0 * R[n - 1] + R[n - 2]) / (2.0 * h);
    }
  }

  Vector grad2(n + 1), mass2(n + 1), cub(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double r2 = profile.r[i] * profile.r[i];
    grad2[i] = dR[i] * dR[i] * r2;
    mass2[i] = R[i] * R[i] * r2;
    cub[i] = R[i] * R[i] * R[i] * r2;
  }
  PohozaevReport rep;
  rep.grad_sq = 4.0 * M_PI * simpson_r2(grad2, h);
  rep.mass = 4.0 * M_PI * simpson_r2(mass2, h);
  rep.cubic = 4.0 * M_PI * simpson_r2(cub, h);
  rep.rel_grad_defect = std::abs(rep.grad_sq - rep.mass) / rep.mass;
  rep.rel_cubic_defect = std::abs(rep.cubic - 2.0 * rep.mass) / (2.0 * rep.mass);
  return rep;
}

ProfileCheck check_profile(const RadialProfile& profile, double tol) {
  ProfileCheck c;
  const int n = static_cast<int>(profile.r.size()) - 1;
  c.positive_at_origin = profile.R[0] > 0.0;
  c.zero_at_rmax = profile.R[n] == 0.0;
  c.residual_below = profile.residual < tol;

  c.strictly_decreasing = true;
  for (int i = 0; i + 1 <= n; ++i) {
    // Strict decrease wherever the values are above the noise floor.
    if (profile.R[i] > 1e-13 && !(profile.R[i + 1] < profile.R[i])) {
      c.strictly_decreasing = false;
      break;
    }
  }

  // One-sided derivative at the origin: second-order forward difference,
  // which vanishes to O(h^3) for an even profile.
  const double h = profile.r[1] - profile.r[0];
  const double d0 = (-3.0 * profile.R[0] + 4.0 * profile.R[1] - profile.R[2]) / (2.0 * h);
  c.flat_at_origin = std::abs(d0) < 1e-4 * std::max(1.0, profile.R[0]);

  c.exponential_tail = true;
  for (int i = n / 2; i <= n; i += 2) {
    const double bound = profile.R[i / 2] * std::exp(-profile.r[i] / 4.0);
    if (profile.R[i] > bound * (1.0 + 1e-9) + 1e-300) {
      c.exponential_tail = false;
      break;
    }
  }
  return c;
}

void write_profile(std::ostream& os, const RadialProfile& profile) {
  char header[256];
  std::snprintf(header, sizeof(header),
                "# radial-profile p=%d r_max=%.16e n_r=%d residual=%.16e iterations=%d\n",
                profile.p, profile.r_max, static_cast<int>(profile.r.size()) - 1,
                profile.residual, profile.iterations);
  os << header;
  char line[80];
  for (Eigen::Index i = 0; i < profile.r.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.16e %.16e\n", profile.r[i], profile.R[i]);
    os << line;
  }
}

void write_profile_file(const std::string& path, const RadialProfile& profile) {
  std::ofstream os(path);
  if (!os) throw config_error("cannot open for writing: " + path);
  write_profile(os, profile);
}

RadialProfile read_profile(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# radial-profile", 0) != 0)
    throw config_error("radial profile: missing or malformed header line");
  RadialProfile profile;
  int n_r = -1;
  {
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "p") profile.p = std::stoi(val);
      else if (key == "r_max") profile.r_max = std::stod(val);
      else if (key == "n_r") n_r = std::stoi(val);
      else if (key == "residual") profile.residual = std::stod(val);
      else if (key == "iterations") profile.iterations = std::stoi(val);
    }
  }
  if (n_r < 1) throw config_error("radial profile: header lacks n_r");
  profile.r.resize(n_r + 1);
  profile.R.resize(n_r + 1);
  for (int i = 0; i <= n_r; ++i) {
    if (!(is >> profile.r[i] >> profile.R[i]))
      throw config_error("radial profile: truncated data at row " + std::to_string(i));
  }
  return profile;
}

RadialProfile read_profile_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open: " + path);
  return read_profile(is);
}

}  // namespace zk
