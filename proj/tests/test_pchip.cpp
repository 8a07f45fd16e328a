#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zk/pchip.hpp"

#include <cmath>
#include <random>

using namespace zk;

TEST_CASE("pchip reproduces knots and linear data") {
  Vector x(5), y(5);
  for (int i = 0; i < 5; ++i) {
    x[i] = i;
    y[i] = 3.0 - 0.5 * i;
  }
  PchipInterpolant p(x, y);
  for (int i = 0; i < 5; ++i) CHECK(p(x[i]) == doctest::Approx(y[i]).epsilon(1e-15));
  for (double t = 0.0; t <= 4.0; t += 0.1) CHECK(p(t) == doctest::Approx(3.0 - 0.5 * t).epsilon(1e-14));
}

TEST_CASE("pchip: monotone data gives no overshoot") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.01, 1.0);
  const int n = 40;
  Vector x(n), y(n);
  x[0] = 0.0;
  y[0] = 5.0;
  for (int i = 1; i < n; ++i) {
    x[i] = x[i - 1] + unif(rng);
    y[i] = y[i - 1] - unif(rng);  // strictly decreasing
  }
  PchipInterpolant p(x, y);
  const double lo = y[n - 1], hi = y[0];
  for (int k = 0; k <= 4000; ++k) {
    const double t = x[0] + (x[n - 1] - x[0]) * k / 4000.0;
    const double v = p(t);
    CHECK(v <= hi + 1e-12);
    CHECK(v >= lo - 1e-12);
  }
  // Monotone between adjacent knots as well
  for (int i = 0; i + 1 < n; ++i) {
    double prev = p(x[i]);
    for (int k = 1; k <= 20; ++k) {
      double t = x[i] + (x[i + 1] - x[i]) * k / 20.0;
      double v = p(t);
      CHECK(v <= prev + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("pchip: derivative is consistent with finite differences") {
  Vector x(30), y(30);
  for (int i = 0; i < 30; ++i) {
    x[i] = 0.3 * i;
    y[i] = std::exp(-x[i]) * (1.0 + x[i]);
  }
  PchipInterpolant p(x, y);
  for (double t = 0.2; t < 8.5; t += 0.37) {
    const double h = 1e-6;
    const double fd = (p(t + h) - p(t - h)) / (2 * h);
    CHECK(p.derivative(t) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("pchip: evaluation outside the data range is a hard error") {
  Vector x(3), y(3);
  x << 0.0, 1.0, 2.0;
  y << 1.0, 0.5, 0.25;
  PchipInterpolant p(x, y);
  CHECK_THROWS_AS(p(-0.001), std::domain_error);
  CHECK_THROWS_AS(p(2.001), std::domain_error);
  CHECK_NOTHROW(p(0.0));
  CHECK_NOTHROW(p(2.0));
}
