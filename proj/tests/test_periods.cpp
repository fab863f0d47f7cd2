#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "abelint/monodromy.hpp"
#include "abelint/periods.hpp"
#include "helpers.hpp"

using namespace abelint;
using namespace abelint_test;

namespace {

// Balanced separable cubic shared by the suite, built once.
const marked_system& cubic_system() {
  static marked_system sys = [] {
    config cfg;
    poly2 G = balance(hstar(), cfg).G;
    return build_marked_system(G, complex(-1.477590650225735, 0.0), cfg);
  }();
  return sys;
}

}  // namespace

TEST_CASE("standard form set for n = 2 is the full monomial rectangle") {
  auto forms = standard_forms(2);
  REQUIRE(forms.size() == 4);
  // Graded order, degree ties broken by descending x exponent.
  CHECK(forms[0].k == 0); CHECK(forms[0].l == 0);
  CHECK(forms[1].k == 1); CHECK(forms[1].l == 0);
  CHECK(forms[2].k == 0); CHECK(forms[2].l == 1);
  CHECK(forms[3].k == 1); CHECK(forms[3].l == 1);
}

TEST_CASE("standard form set for n = 3 fills 0 <= k, l <= 2") {
  auto forms = standard_forms(3);
  REQUIRE(forms.size() == 9);
  int count[5] = {0, 0, 0, 0, 0};
  for (const auto& w : forms) {
    CHECK(w.k >= 0); CHECK(w.k <= 2);
    CHECK(w.l >= 0); CHECK(w.l <= 2);
    ++count[w.k + w.l];
  }
  CHECK(count[0] == 1);
  CHECK(count[1] == 2);
  CHECK(count[2] == 3);
  CHECK(count[3] == 2);
  CHECK(count[4] == 1);
  // The degree-2 layer must include the mixed monomial: dropping it in
  // favour of a pure power degenerates the period matrix of separable
  // polynomials, whose pure-power forms are pairwise dependent modulo
  // exact forms.
  bool has_mixed = false;
  for (const auto& w : forms) has_mixed |= (w.k == 1 && w.l == 1);
  CHECK(has_mixed);
}

TEST_CASE("exact forms integrate to zero over a real oval") {
  config cfg;
  poly2 G = balance(hstar(), cfg).G;
  cycle oval =
      trace_real_oval(G, -1.477590650225735, cpoint{0.4659, 0.70711}, cfg);
  // d(x^2 y) = 2xy dx + x^2 dy.
  one_form w;
  w.A = poly2::from_terms({{1, 1, 2.0}});
  w.B = poly2::from_terms({{2, 0, 1.0}});
  complex val = integrate_form(G, oval, w, cfg);
  CHECK(std::abs(val) <= 1e-8 * oval.circumference());
}

TEST_CASE("cubic period matrix is far from singular") {
  const auto& sys = cubic_system();
  REQUIRE(sys.mu() == 4);
  CHECK(sys.period_cond > 0.05);   // measured 1.145e-01
  CHECK(sys.period_cond < 0.25);
}

TEST_CASE("determinant of the period matrix is monodromy invariant") {
  const auto& sys = cubic_system();
  config cfg;
  auto rep = determinant_monodromy_check(sys, sys.paths.lambdas, cfg);
  CHECK(rep.pass);
  CHECK(std::abs(rep.base_det) == doctest::Approx(554.9453).epsilon(1e-3));
  REQUIRE(rep.residuals.size() == 4);
  for (double r : rep.residuals) CHECK(r <= 1e-8);
}

TEST_CASE("determinant is a polynomial in t vanishing at the critical "
          "values") {
  const auto& sys = cubic_system();
  config cfg;
  // Samples spread on a circle around the base point keep the fitted
  // coefficients well conditioned (a short segment of samples resolves the
  // determinant locally but not its extrapolation to the values).
  std::vector<complex> ts;
  for (int s = 0; s < 17; ++s)
    ts.push_back(sys.t0 + std::polar(0.3, 2.0 * M_PI * s / 17.0));
  auto rep = determinant_polynomiality_check(sys, ts, cfg);
  CHECK(rep.degree == 4);
  CHECK(rep.residual <= 1e-8);
  REQUIRE(rep.coefficients.size() == 5);
  // Measured fit: det(t) = -877.2 + 1181 t^2 - 240.4 t^4 (odd terms zero
  // by the symmetry of the configuration).
  CHECK(rep.coefficients[0].real() == doctest::Approx(-877.2).epsilon(2e-3));
  CHECK(rep.coefficients[4].real() == doctest::Approx(-240.4).epsilon(2e-3));
  // The roots are exactly the critical values: evaluating the fitted
  // polynomial at each balanced value must give a relative zero.
  for (const auto& v : sys.values) {
    complex acc = 0, p = 1;
    for (const auto& c : rep.coefficients) {
      acc += c * p;
      p *= v;
    }
    CHECK(std::abs(acc) <= 1e-5 * std::abs(rep.coefficients[0]));
  }
}

TEST_CASE("determinant lower bound evaluates its closed form in log space") {
  gap_report g;
  g.n = 2;
  g.c_prime = 1.0;
  g.c_dprime = 1.0;
  // ln delta0 = 6 n^3 ln c' + n^2 ln c'' - 62 n^3 ln n = -496 ln 2.
  CHECK(delta0_bound(g) ==
        doctest::Approx(-496.0 * std::log(2.0)).epsilon(1e-12));
  // Gap values below 1 penalize the bound through both terms.
  g.c_prime = 0.5;
  g.c_dprime = 0.25;
  CHECK(delta0_bound(g) ==
        doctest::Approx(-496.0 * std::log(2.0) + 48.0 * std::log(0.5) +
                        4.0 * std::log(0.25))
            .epsilon(1e-12));
}
