#include "zk/pchip.hpp"

#include <algorithm>
#include <cmath>

namespace zk {

namespace {

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// Non-centered endpoint slope with the standard pchip clipping.
double end_slope(double h0, double h1, double d0, double d1) {
  double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (sign(m) != sign(d0)) {
    m = 0.0;
  } else if (sign(d0) != sign(d1) && std::abs(m) > 3.0 * std::abs(d0)) {
    m = 3.0 * d0;
  }
  return m;
}

}  // namespace

PchipInterpolant::PchipInterpolant(Vector x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
  const Eigen::Index n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("pchip: need >= 2 matching points");
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    if (!(x_[i] < x_[i + 1])) throw std::invalid_argument("pchip: x must be strictly increasing");

  m_.resize(n);
  if (n == 2) {
    const double d = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    m_[0] = m_[1] = d;
    return;
  }
  Vector h(n - 1), d(n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) {
      m_[i] = 0.0;
    } else {
      // Weighted harmonic mean of the neighboring secant slopes.
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  m_[0] = end_slope(h[0], h[1], d[0], d[1]);
  m_[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

int PchipInterpolant::find_interval(double t) const {
  if (t < x_[0] || t > x_[x_.size() - 1])
    throw std::domain_error("pchip: evaluation outside data range");
  const double* begin = x_.data();
  const double* end = x_.data() + x_.size();
  int k = static_cast<int>(std::upper_bound(begin, end, t) - begin) - 1;
  k = std::clamp(k, 0, static_cast<int>(x_.size()) - 2);
  return k;
}

double PchipInterpolant::operator()(double t) const {
  const int k = find_interval(t);
  const double h = x_[k + 1] - x_[k];
  const double s = (t - x_[k]) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * y_[k] + h * h10 * m_[k] + h01 * y_[k + 1] + h * h11 * m_[k + 1];
}

double PchipInterpolant::derivative(double t) const {
  const int k = find_interval(t);
  const double h = x_[k + 1] - x_[k];
  const double s = (t - x_[k]) / h;
  const double dh00 = 6.0 * s * (s - 1.0) / h;
  const double dh10 = (1.0 - s) * (1.0 - 3.0 * s);
  const double dh01 = -6.0 * s * (s - 1.0) / h;
  const double dh11 = s * (3.0 * s - 2.0);
  return dh00 * y_[k] + dh10 * m_[k] + dh01 * y_[k + 1] + dh11 * m_[k + 1];
}

}  // namespace zk
