#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "abelint/monodromy.hpp"
#include "abelint/periods.hpp"
#include "helpers.hpp"

using namespace abelint;
using namespace abelint_test;

namespace {

// Balanced separable cubic: 4 Morse points, values {+-2, +-0.955185}.
const marked_system& cubic_system() {
  static marked_system sys = [] {
    config cfg;
    poly2 G = balance(hstar(), cfg).G;
    return build_marked_system(G, complex(-1.477590650225735, 0.0), cfg);
  }();
  return sys;
}

const cycle& cubic_oval() {
  static cycle oval = [] {
    config cfg;
    return trace_real_oval(cubic_system().H, -1.477590650225735,
                           cpoint{0.4659, 0.70711}, cfg);
  }();
  return oval;
}

// Balanced quartic perturbation: 9 Morse points, all critical values real,
// base point above all of them so every path shares one leftward ray.
poly2 raw_quartic() {
  return poly2::from_terms({{4, 0, 1.0},
                            {2, 0, -2.0},
                            {1, 0, 0.3},
                            {0, 4, 1.0},
                            {0, 2, -2.1},
                            {0, 1, 0.17}});
}

const marked_system& quartic_system() {
  static marked_system sys = [] {
    config cfg;
    poly2 G = balance(raw_quartic(), cfg).G;
    return build_marked_system(G, complex(2.5, 0.0), cfg);
  }();
  return sys;
}

Eigen::VectorXi unit(int mu, int k) {
  Eigen::VectorXi e = Eigen::VectorXi::Zero(mu);
  e(k) = 1;
  return e;
}

}  // namespace

TEST_CASE("cubic marked system freezes its geometry") {
  const auto& sys = cubic_system();
  REQUIRE(sys.mu() == 4);
  CHECK(sys.nu == doctest::Approx(0.0625).epsilon(1e-9));
  CHECK(sys.pl_sign == -1);
  double want_vals[4] = {-2.0, -0.955185, 0.955185, 2.0};
  for (int j = 0; j < 4; ++j) {
    CHECK(sys.values[j].real() == doctest::Approx(want_vals[j]).epsilon(1e-5));
    CHECK(std::abs(sys.values[j].imag()) <= 1e-9);
  }
  int want_m[4][4] = {{0, -1, -1, 1},
                      {1, 0, 0, -1},
                      {1, 0, 0, -1},
                      {-1, 1, 1, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(sys.intersection(i, j) == want_m[i][j]);
}

TEST_CASE("quartic marked system freezes its geometry") {
  const auto& sys = quartic_system();
  REQUIRE(sys.mu() == 9);
  CHECK(sys.nu == doctest::Approx(0.0134235).epsilon(2e-4));
  double want_vals[9] = {-2.0,      -1.463809, -1.077058, -0.540868,
                         -0.026847, 0.026847,  0.563038,  0.896094,
                         2.0};
  for (int j = 0; j < 9; ++j) {
    CHECK(sys.values[j].real() == doctest::Approx(want_vals[j]).epsilon(1e-4));
    CHECK(std::abs(sys.values[j].imag()) <= 1e-9);
  }
  int want_m[9][9] = {{0, 0, 0, 0, 1, -1, 0, 0, 1},
                      {0, 0, 0, 0, -1, 0, 1, 0, -1},
                      {0, 0, 0, 0, 0, -1, 0, 1, 1},
                      {0, 0, 0, 0, 0, 0, -1, 1, 1},
                      {-1, 1, 0, 0, 0, 0, 0, 0, 1},
                      {1, 0, 1, 0, 0, 0, 0, 0, -1},
                      {0, -1, 0, 1, 0, 0, 0, 0, -1},
                      {0, 0, -1, -1, 0, 0, 0, 0, 1},
                      {-1, 1, -1, -1, -1, 1, 1, -1, 0}};
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) CHECK(sys.intersection(i, j) == want_m[i][j]);
}

TEST_CASE("marked cycles have unit homology coordinates") {
  const auto& sys = cubic_system();
  config cfg;
  for (int k = 0; k < 4; ++k) {
    Eigen::VectorXi c = homology_coordinates(sys, sys.deltas[k], cfg);
    CHECK(c == unit(4, k));
  }
}

TEST_CASE("algebraic monodromy matches numerical continuation") {
  const auto& sys = cubic_system();
  config cfg;
  // Pairs (loop j, cycle k) covering a moved cycle on each side of the
  // configuration plus one fixed cycle (intersection zero).
  int pairs[4][2] = {{0, 1}, {3, 0}, {1, 3}, {1, 2}};
  for (auto& p : pairs) {
    int j = p[0], k = p[1];
    cycle moved =
        transport_cycle(sys.H, sys.deltas[k], sys.paths.lambdas[j], cfg);
    Eigen::VectorXi got = homology_coordinates(sys, moved, cfg);
    Eigen::VectorXi want = picard_lefschetz_apply(sys, j, unit(4, k));
    CHECK(got == want);
  }
  // The formula itself on the frozen matrix: around value 0, cycle 3 picks
  // up sign * (delta_3 o delta_0) = (-1)(-1) = +1 copy of delta_0.
  Eigen::VectorXi w = picard_lefschetz_apply(sys, 0, unit(4, 3));
  CHECK(w(0) == 1);
  CHECK(w(3) == 1);
  CHECK(w(1) == 0);
  CHECK(w(2) == 0);
}

TEST_CASE("real oval of the cubic is a single vanishing cycle") {
  const auto& sys = cubic_system();
  config cfg;
  Eigen::VectorXi dec = oval_decomposition(sys, cubic_oval(), cfg);
  CHECK(dec == unit(4, 0));
}

TEST_CASE("real oval of the quartic decomposes over all nine cycles") {
  const auto& sys = quartic_system();
  config cfg;
  cycle oval = trace_real_oval(sys.H, 2.5, cpoint{0.0, 1.4635}, cfg);
  Eigen::VectorXi dec = oval_decomposition(sys, oval, cfg);
  int want[9] = {-1, 1, -1, -1, 1, -1, -1, 1, -1};
  REQUIRE(dec.size() == 9);
  for (int j = 0; j < 9; ++j) CHECK(dec(j) == want[j]);
}

TEST_CASE("lifted tree set of the cubic meets the diameter and clearance "
          "guarantees") {
  const auto& sys = cubic_system();
  config cfg;
  lifted_tree_set K = build_K(sys, cubic_oval(), cfg);
  CHECK(K.diameter_kprime < 19.0 * 4);
  CHECK(K.diameter_k < 36.0 * 4);
  CHECK(K.diameter_kprime == doctest::Approx(12.791).epsilon(3e-2));
  CHECK(K.clearance >= sys.nu * (1.0 - 1e-9));
  REQUIRE(K.jumps.size() == 4);
  int want[4][3] = {{-1, 1, 1}, {-1, 2, 1}, {-1, 3, -1}, {1, 0, -1}};
  for (int e = 0; e < 4; ++e) {
    CHECK(K.jumps[e].parent == want[e][0]);
    CHECK(K.jumps[e].child == want[e][1]);
    CHECK(K.jumps[e].multiple == want[e][2]);
    CHECK(K.jumps[e].residual <= 1e-8);
  }
}

TEST_CASE("modified tree set roots at a marked cycle") {
  const auto& sys = cubic_system();
  config cfg;
  lifted_tree_set K = build_K_modified(sys, 0, cfg);
  CHECK(K.modified);
  CHECK(K.root_delta == 0);
  CHECK(K.diameter_kprime < 19.0 * 4);
  CHECK(K.diameter_k < 36.0 * 4);
  CHECK(K.clearance >= sys.nu * (1.0 - 1e-9));
  REQUIRE(K.jumps.size() == 3);
  int want[3][3] = {{0, 1, 1}, {0, 2, 1}, {0, 3, -1}};
  for (int e = 0; e < 3; ++e) {
    CHECK(K.jumps[e].parent == want[e][0]);
    CHECK(K.jumps[e].child == want[e][1]);
    CHECK(K.jumps[e].multiple == want[e][2]);
    CHECK(K.jumps[e].residual <= 1e-8);
  }
}

TEST_CASE("lifted tree set of the quartic stays within its bounds") {
  const auto& sys = quartic_system();
  config cfg;
  cycle oval = trace_real_oval(sys.H, 2.5, cpoint{0.0, 1.4635}, cfg);
  lifted_tree_set K = build_K(sys, oval, cfg);
  CHECK(K.diameter_kprime < 19.0 * 9);
  CHECK(K.diameter_k < 36.0 * 9);
  CHECK(K.diameter_kprime == doctest::Approx(18.52).epsilon(3e-2));
  CHECK(K.diameter_k == doctest::Approx(150.9).epsilon(3e-2));
  CHECK(K.clearance >= sys.nu * (1.0 - 1e-9));
  REQUIRE(K.jumps.size() == 9);
  for (const auto& j : K.jumps) {
    CHECK(std::abs(j.multiple) == 1);
    CHECK(j.residual <= 1e-8);
  }
}

TEST_CASE("period vector of the cubic oval branches with order three at "
          "infinity") {
  const auto& sys = cubic_system();
  config cfg;
  auto rep = monodromy_at_infinity(sys.H, monomial_form(0, 0), 5.0,
                                   cubic_oval(), cfg);
  CHECK(rep.observed_order == 3);
  CHECK(rep.divides_n_plus_1);
  CHECK(rep.drift <= 1e-6);
  // The class genuinely moves: the omega integrals after one and two
  // circuits differ from the return value.
  REQUIRE(rep.omega_periods.size() == 3);
  CHECK(std::abs(rep.omega_periods[0] - rep.omega_periods[2]) > 1.0);
  CHECK(std::abs(rep.omega_periods[1] - rep.omega_periods[2]) > 1.0);
}

TEST_CASE("puncture loop periods are fixed at infinity") {
  config cfg;
  poly2 G = poly2::from_terms({{3, 0, 1.0}, {0, 3, 1.0}, {1, 0, -1.0}});
  // The x-loop encloses all three ramification x-values of the fiber at
  // t = 3 (moduli 1.34 and 1.67), so the tracked sheet closes after one
  // circuit and the cycle is a loop around one point at infinity.
  cycle fam = cycle_from_x_loop(G, complex(3.0, 0.0), complex(0.0, 0.0), 2.2,
                                complex(-1.76, 0.0), cfg);
  CHECK(fam.residual(G) <= 1e-9);
  auto rep = monodromy_at_infinity(G, monomial_form(0, 0), 3.0, fam, cfg);
  CHECK(rep.observed_order == 1);
  CHECK(rep.divides_n_plus_1);
  CHECK(rep.drift <= 1e-6);
  // Analytic oracle: the integral of y dx around that puncture is
  // 2 pi i / 3.
  REQUIRE(!rep.omega_periods.empty());
  check_close(rep.omega_periods.back(), complex(0.0, 2.0943951023931953),
              1e-6);
}

TEST_CASE("marked system construction rejects bad configurations") {
  config cfg;
  // Unbalanced input: the raw cubic's values fill a disk of radius 2.707.
  try {
    build_marked_system(hstar(), complex(0.1, 0.0), cfg);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::config_violation);
  }
  // Base point sitting on a critical value.
  try {
    build_marked_system(cubic_system().H, complex(-2.0, 0.0), cfg);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::config_violation);
  }
}
