#include <doctest.h>

#include <cmath>

#include "abelint/bounds.hpp"

using namespace abelint;

namespace {
const double LN2 = std::log(2.0);
}

TEST_CASE("headline bound: frozen values and appendix switch") {
  CHECK(headline_bound(2, 1.0, 1.0, 5000) == doctest::Approx(80000.0));
  CHECK(headline_bound(2, 1.0, 1.0, 5) == doctest::Approx(80.0));
  CHECK_THROWS_AS(headline_bound(2, 1.0, 1.0, 50), error);
  // prefactor ln(1 - ln c')
  double v = headline_bound(2, 0.5, 1.0, 5000);
  CHECK(v == doctest::Approx(std::log(1 + LN2) + 80000.0));
}

TEST_CASE("sigma and disk-union bounds") {
  CHECK(sigma_bound(2, 1.0, 1.0) == doctest::Approx(578.0 * 16));
  CHECK(disk_union_bound(2, 1.0, 1.0) == doctest::Approx(4800.0 * 16));
}

TEST_CASE("large disk bound: floor enforced, log-sum-exp branch") {
  CHECK_THROWS_AS(large_disk_bound(2, 1.0, 1.0, 4608.0, 1.0), error);
  // At R just over the floor the disk-union term still dominates the linear
  // growth term, and the log-sum-exp collapses onto it.
  double v = large_disk_bound(2, 1.0, 1.0, 4609.0, 1.0);
  CHECK(v == doctest::Approx(4800.0 * 16 + 481.0).epsilon(1e-12));
  // growth-term variant accepts equality
  CHECK(growth_term_bound(2, 1.0, 1.0, 4608.0) == doctest::Approx(7.0 * 4608.0));
  CHECK_THROWS_AS(growth_term_bound(2, 1.0, 1.0, 4607.9), error);
}

TEST_CASE("sector bound uses its own constant") {
  CHECK(sector_bound(2, 1.0, 1.0, 1.0) ==
        doctest::Approx(4700.0 * 16 + 481.0));
}

TEST_CASE("main lemma: polynomial estimate dominated across the sweep") {
  for (int n = 2; n <= 6; ++n)
    for (double cp : {1.0, 0.5, 0.1, 0.01})
      for (double cpp : {1.0, 0.5, 0.1, 0.01}) {
        auto rep = main_lemma_bounds(n, cp, cpp);
        CHECK(rep.dominated);
        CHECK(rep.eq_1_8 ==
              doctest::Approx(std::log(1 - std::log(cp)) +
                              2.0 * std::pow(n, 4) / cpp));
      }
}

TEST_CASE("period bounds: frozen example and integral prefactor") {
  // n=2, beta=1/16, |alpha|=9: 10*4096*14*16*ln2 (c'=1 kills the tail).
  double v = log_M1(2, 1.0, 9.0, 1.0 / 16.0);
  CHECK(v == doctest::Approx(10.0 * 4096 * 14 * 16 * LN2));
  CHECK(log_M1_integral(2, 1.0, 9.0, 1.0 / 16.0) ==
        doctest::Approx(v - 4 * LN2));
  double m0 = log_M0(2, 1.0, 1.0);
  CHECK(m0 == doctest::Approx(2600.0 * 65536 * LN2));
  // |t'| <= 5 contributes nothing; larger |t'| contributes 2 ln(|t'|/5).
  double m2a = log_M2(2, 1.0, 19.0, 1.0, 1.0 / 16.0, 4.0);
  double m2b = log_M2(2, 1.0, 19.0, 1.0, 1.0 / 16.0, 10.0);
  CHECK(m2b - m2a == doctest::Approx(2 * std::log(2.0)));
}

TEST_CASE("determinant floor and fewnomial ceiling") {
  CHECK(log_delta0(2, 1.0, 1.0) == doctest::Approx(-496.0 * LN2));
  CHECK(log_R0(2, 1.0) == doctest::Approx(520.0 * LN2));
  // Monotone: smaller gaps only lower the floor.
  CHECK(log_delta0(2, 0.5, 1.0) < log_delta0(2, 1.0, 1.0));
  CHECK(log_delta0(2, 1.0, 0.5) < log_delta0(2, 1.0, 1.0));
  CHECK(log_R0(2, 0.5) > log_R0(2, 1.0));
}

TEST_CASE("no overflow across the admissible parameter box") {
  for (int n = 2; n <= 10; ++n)
    for (double cpp : {1.0, 1e-3, 1e-6}) {
      bounds_params p;
      p.n = n;
      p.c_prime = 1e-6;
      p.c_dprime = cpp;
      auto rep = bounds_report(p);
      for (auto& [k, v] : rep) {
        CAPTURE(k);
        CHECK(std::isfinite(v));
      }
      CHECK(rep.at("headline") > rep.at("sigma"));
      CHECK(rep.at("disk_union") > rep.at("sigma"));
    }
}

TEST_CASE("pointwise slope lower bounds") {
  complex a(-2.0, 0.0), b(-0.9551, 0.0);
  complex t(-1.5, 0.0);
  double v = poincare_lb_ab(t, a, b);
  double da = std::abs(t - a), db = std::abs(t - b);
  double dmin = std::min(da, db);
  double la = std::abs(std::log(da / std::abs(a - b)));
  double lb = std::abs(std::log(db / std::abs(a - b)));
  CHECK(v == doctest::Approx(1.0 / (dmin * (std::min(la, lb) + 5.0))));
  CHECK_THROWS_AS(poincare_lb_ab(a, a, b), error);

  double w = poincare_lb_b(t, a, 2, 1.0);
  double C = 2 * std::log(2.0) + 5.0;
  CHECK(w == doctest::Approx(1.0 / (0.5 * (std::abs(std::log(0.5)) + C))));
  CHECK(mardesic_multiplicity(2) == doctest::Approx(16.0));
}
