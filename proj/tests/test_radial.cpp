#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zk/radial.hpp"
#include "shooting.hpp"

#include <cmath>
#include <sstream>

using namespace zk;

TEST_CASE("solve_radial: precondition checks") {
  CHECK_THROWS_AS(solve_radial(1, 50.0, 4000), std::invalid_argument);
  CHECK_THROWS_AS(solve_radial(2, 5.0, 4000), std::invalid_argument);
  CHECK_THROWS_AS(solve_radial(2, 50.0, 100), std::invalid_argument);
}

TEST_CASE("solve_radial: non-convergence is reported") {
  CHECK_THROWS_AS(solve_radial(2, 30.0, 600, 1e-10, 2), solver_error);
}

TEST_CASE("converged p=2 profile: invariants and Pohozaev identities") {
  const double tol = 1e-10;
  RadialProfile prof = solve_radial(2, 30.0, 1500, tol);
  ProfileCheck chk = check_profile(prof, tol);
  CHECK(chk.positive_at_origin);
  CHECK(chk.strictly_decreasing);
  CHECK(chk.zero_at_rmax);
  CHECK(chk.flat_at_origin);
  CHECK(chk.residual_below);
  CHECK(chk.exponential_tail);
  CHECK(std::abs(prof.stab_factor - 1.0) < 10.0 * tol);

  PohozaevReport rep = pohozaev_report(prof);
  CHECK(rep.rel_grad_defect < 1e-4);
  CHECK(rep.rel_cubic_defect < 1e-4);
  CHECK(rep.mass > 0.0);
}

TEST_CASE("radial_mass: zero and unit profiles") {
  RadialProfile zero;
  zero.p = 2;
  zero.r_max = 1.0;
  zero.r = Vector::LinSpaced(201, 0.0, 1.0);
  zero.R = Vector::Zero(201);
  CHECK(radial_mass(zero) == 0.0);

  RadialProfile unit = zero;
  unit.R = Vector::Ones(201);
  // 4 pi int_0^1 r^2 dr = 4 pi / 3, up to trapezoid error in r^2
  CHECK(std::abs(radial_mass(unit) - 4.0 * M_PI / 3.0) < 1e-4);
}

TEST_CASE("Petviashvili R(0) matches the shooting oracle to 1e-5 relative") {
  RadialProfile prof = solve_radial(2, 50.0, 4000);
  zktest::ShootingResult oracle = zktest::shoot_ground_state(2);
  CAPTURE(prof.R[0]);
  CAPTURE(oracle.R0);
  CHECK(std::abs(prof.R[0] - oracle.R0) / oracle.R0 < 1e-5);
}

TEST_CASE("profile serialization round-trips bit-stably") {
  RadialProfile prof = solve_radial(2, 20.0, 400);
  std::stringstream ss;
  write_profile(ss, prof);
  RadialProfile back = read_profile(ss);
  CHECK(back.p == prof.p);
  CHECK(back.r_max == prof.r_max);
  CHECK(back.residual == prof.residual);
  CHECK(back.iterations == prof.iterations);
  REQUIRE(back.R.size() == prof.R.size());
  for (Eigen::Index i = 0; i < prof.R.size(); ++i) {
    CHECK(back.r[i] == prof.r[i]);
    CHECK(back.R[i] == prof.R[i]);
  }
}
