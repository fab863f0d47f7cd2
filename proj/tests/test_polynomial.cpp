#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "abelint/normalize.hpp"
#include "abelint/poly2.hpp"
#include "helpers.hpp"

using namespace abelint;
using namespace abelint_test;

namespace {
const double SQH = std::sqrt(0.5);
}

TEST_CASE("poly2 evaluation, derivatives, top form") {
  poly2 H = hstar();
  CHECK(H.degree() == 3);
  check_close(H.eval(2.0, 1.0), complex(8 - 6 + 1 - 1.5), 1e-14);
  check_close(H.dx().eval(1.0, 0.0), complex(0.0), 1e-14);
  check_close(H.dy().eval(0.0, SQH), complex(3 * 0.5 - 1.5), 1e-13);
  poly2 h = H.higher_form();
  check_close(h.eval(1.0, 1.0), complex(2.0), 1e-14);
  check_close(h.eval(1.0, 0.0), complex(1.0), 1e-14);
  CHECK(H.is_real());
}

TEST_CASE("compose_affine matches pointwise evaluation") {
  poly2 H = hstar();
  complex s(0.7, 0.1), u(-0.3, 0.2), v(0.4, 0.0);
  poly2 G = H.compose_affine(s, u, v);
  for (double xr : {-1.0, 0.3, 2.0})
    for (double yr : {-0.5, 0.0, 1.7}) {
      complex x(xr, 0.1), y(yr, -0.2);
      check_close(G.eval(x, y), H.eval(s * x + u, s * y + v), 1e-12);
    }
}

TEST_CASE("univariate roots: cubic with known roots") {
  // (z-1)(z+2)(z-3i) = z^3 + (1-3i) z^2 + (-2-3i) z + 6i
  std::vector<complex> cs = {complex(0, 6), complex(-2, -3), complex(1, -3),
                             complex(1, 0)};
  auto r = poly_roots(cs);
  REQUIRE(r.size() == 3);
  std::vector<complex> want = {complex(-2, 0), complex(0, 3), complex(1, 0)};
  for (auto w : want) {
    double best = 1e9;
    for (auto z : r) best = std::min(best, std::abs(z - w));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("critical points of the separable cubic match the grid oracle") {
  poly2 H = hstar();
  config cfg;
  auto pts = critical_points(H, cfg);
  REQUIRE(pts.size() == 4);
  auto oracle = grid_newton_critical_points(H);
  REQUIRE(oracle.size() == 4);
  for (const auto& o : oracle) {
    double best = 1e9;
    for (const auto& p : pts)
      best = std::min(best, std::abs(p.x - o.x) + std::abs(p.y - o.y));
    CHECK(best < 1e-9);
  }
  // Frozen analytic values.
  std::vector<double> want = {-(2 + SQH), -(2 - SQH), 2 - SQH, 2 + SQH};
  std::vector<double> got;
  for (const auto& p : pts) got.push_back(p.value.real());
  std::sort(got.begin(), got.end());
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(got[i] - want[i]) < 1e-9);
  }
  for (const auto& p : pts) {
    CHECK(p.morse);
    CHECK(std::abs(p.value.imag()) < 1e-10);
  }
}

TEST_CASE("critical points: deficient count flagged") {
  // x^3 - 3x + y^2 has two critical points, below (deg-1)^2 = 4.
  poly2 H = poly2::from_terms({{3, 0, 1.0}, {1, 0, -3.0}, {0, 2, 1.0}});
  config cfg;
  bool deficient = false;
  auto pts = critical_points(H, cfg, &deficient);
  CHECK(pts.size() == 2);
  CHECK(deficient);
}

TEST_CASE("critical points: degenerate single point at origin") {
  poly2 H = poly2::from_terms({{3, 0, 1.0}, {0, 3, 1.0}});
  config cfg;
  auto pts = critical_points(H, cfg);
  REQUIRE(pts.size() == 1);
  check_close(pts[0].x, complex(0), 1e-8);
  check_close(pts[0].y, complex(0), 1e-8);
  CHECK_FALSE(pts[0].morse);
}

TEST_CASE("critical points: positive dimensional locus rejected") {
  // H = (x + y)^3 has grad vanishing on the whole line x + y = 0.
  poly2 H = poly2::from_terms(
      {{3, 0, 1.0}, {2, 1, 3.0}, {1, 2, 3.0}, {0, 3, 1.0}});
  config cfg;
  CHECK_THROWS_AS(critical_points(H, cfg), error);
}

TEST_CASE("ultra-Morse: separable cubic passes, symmetric variant fails") {
  config cfg;
  auto rep = is_ultra_morse(hstar(), cfg);
  CHECK(rep.ultra_morse);
  CHECK(rep.points.size() == 4);

  // x^3 - 3x + y^3 - 3y: saddle values coincide at 0.
  poly2 Hs = poly2::from_terms(
      {{3, 0, 1.0}, {1, 0, -3.0}, {0, 3, 1.0}, {0, 1, -3.0}});
  auto rs = is_ultra_morse(Hs, cfg);
  CHECK_FALSE(rs.ultra_morse);
  CHECK(rs.value_coincidence);

  // x^3 - 3x + y^2: top form x^3 has a triple root.
  poly2 Hp = poly2::from_terms({{3, 0, 1.0}, {1, 0, -3.0}, {0, 2, 1.0}});
  auto rp = is_ultra_morse(Hp, cfg);
  CHECK_FALSE(rp.ultra_morse);
  CHECK(rp.root_coincidence);
  CHECK(rp.deficient);
}

TEST_CASE("minimal enclosing disk") {
  config cfg;
  uint64_t seed = cfg.tol.seed;
  auto d2 = minimal_enclosing_disk({complex(-1, 0), complex(3, 0)}, seed);
  check_close(d2.center, complex(1, 0), 1e-12);
  CHECK(std::abs(d2.radius - 2) < 1e-12);

  // Equilateral triangle: circumcircle.
  std::vector<complex> tri = {std::polar(1.0, 0.1), std::polar(1.0, 0.1 + 2 * M_PI / 3),
                              std::polar(1.0, 0.1 + 4 * M_PI / 3)};
  auto d3 = minimal_enclosing_disk(tri, seed);
  check_close(d3.center, complex(0, 0), 1e-10);
  CHECK(std::abs(d3.radius - 1) < 1e-10);

  // Obtuse triangle: diameter of the two far points wins.
  auto d4 = minimal_enclosing_disk(
      {complex(0, 0), complex(4, 0), complex(2, 0.1)}, seed);
  check_close(d4.center, complex(2, 0), 1e-9);
  CHECK(std::abs(d4.radius - 2) < 1e-9);

  // Interior points never matter.
  auto d5 = minimal_enclosing_disk(
      {complex(-1, 0), complex(3, 0), complex(1, 0.5), complex(0.7, -1)}, seed);
  check_close(d5.center, d2.center, 1e-9);
}

TEST_CASE("balance: separable cubic and idempotence") {
  config cfg;
  poly2 H = hstar();
  auto b = balance(H, cfg);
  CHECK(std::abs(b.map.a.real() - 2.0 / (2 + SQH)) < 1e-9);
  CHECK(std::abs(b.map.a.imag()) < 1e-12);
  CHECK(std::abs(b.map.b) < 1e-9);
  CHECK(std::abs(b.value_disk.radius - (2 + SQH)) < 1e-9);

  auto vals = critical_points(b.G, cfg);
  double rmax = 0;
  for (auto& p : vals) rmax = std::max(rmax, std::abs(p.value));
  CHECK(std::abs(rmax - 2.0) < 1e-8);

  // Balancing a balanced polynomial is the identity map.
  auto b2 = balance(b.G, cfg);
  CHECK(std::abs(b2.map.a - complex(1)) < 1e-9);
  CHECK(std::abs(b2.map.b) < 1e-9);
}

TEST_CASE("balance: coincident critical values rejected") {
  // Degree-3 polynomial with a single critical value is not available with
  // Morse points; the degenerate x^3+y^3 has exactly one critical value.
  poly2 H = poly2::from_terms({{3, 0, 1.0}, {0, 3, 1.0}});
  config cfg;
  CHECK_THROWS_AS(balance(H, cfg), error);
}

TEST_CASE("hmax_norm: frozen values and scale equivariance") {
  // Grid+refinement agrees with the analytic maxima.
  poly2 cube = poly2::from_terms({{3, 0, 1.0}, {0, 3, 1.0}});
  CHECK(std::abs(hmax_norm(cube.higher_form()) - 1.0) < 1e-9);
  poly2 mono = poly2::from_terms({{3, 0, 1.0}});
  CHECK(std::abs(hmax_norm(mono) - 1.0) < 1e-10);
  poly2 xy = poly2::from_terms({{1, 1, 1.0}});
  CHECK(std::abs(hmax_norm(xy) - 0.5) < 1e-10);
  poly2 scaled = xy * complex(-3.0, 4.0);
  CHECK(std::abs(hmax_norm(scaled) - 2.5) < 1e-9);
}

TEST_CASE("rescale: unit top form, critical point at origin") {
  config cfg;
  auto b = balance(hstar(), cfg);
  auto r = rescale(b.G, cfg);
  CHECK(std::abs(hmax_norm(r.N.higher_form()) - 1.0) < 1e-8);
  // Origin is critical.
  check_close(r.N.dx().eval(0.0, 0.0), complex(0), 1e-8);
  check_close(r.N.dy().eval(0.0, 0.0), complex(0), 1e-8);
  // Critical values are preserved by the source change.
  auto pv = critical_points(r.N, cfg);
  auto gv = critical_points(b.G, cfg);
  REQUIRE(pv.size() == gv.size());
  for (size_t i = 0; i < pv.size(); ++i)
    CHECK(std::abs(pv[i].value - gv[i].value) < 1e-7);
  // The tie break picked the lexicographically smallest of the equal-modulus
  // critical points: (-1, -sqrt(.5)) in source coordinates.
  check_close(r.frame.u, complex(-1.0), 1e-7);
  check_close(r.frame.v, complex(-SQH), 1e-7);
}

TEST_CASE("fs_distance conventions") {
  // acos near 1 carries sqrt(eps) noise, so identical points only land
  // within ~1e-8 of zero.
  CHECK(fs_distance(complex(1), complex(0), complex(1), complex(0)) < 1e-7);
  CHECK(fs_distance(complex(1), complex(0), complex(0), complex(1)) ==
        doctest::Approx(M_PI / 2));
  // Phase never matters.
  CHECK(fs_distance(complex(1), complex(1), std::polar(1.0, 1.3),
                    std::polar(1.0, 1.3)) < 1e-7);
  // Roots of x^3 + y^3 on the projective line sit pi/3 apart: [1:-1], [1:-w].
  complex w = std::polar(1.0, 2 * M_PI / 3);
  CHECK(fs_distance(complex(1), complex(-1), complex(1), -w) ==
        doctest::Approx(M_PI / 3).epsilon(1e-9));
}

TEST_CASE("gap functions: separable cubic frozen values") {
  config cfg;
  auto g = gap_functions(hstar(), cfg);
  CHECK(g.n == 2);
  CHECK(std::abs(g.c1 - 2 * M_PI / 3) < 1e-9);
  double a = 2.0 / (2 + SQH);
  double expected_c2 = 4.0 * (2.0 - (2 - SQH) * a);
  CHECK(std::abs(g.c2 - expected_c2) < 1e-7);
  CHECK(g.c_prime == doctest::Approx(1.0));
  CHECK(g.c_dprime == doctest::Approx(1.0));
  CHECK(std::abs(g.nu - 0.0625) < 1e-12);
  CHECK(std::abs(g.log_A - 16.0) < 1e-12);
}

TEST_CASE("gap functions: invariance under target and source changes") {
  config cfg;
  poly2 H = hstar();
  auto g0 = gap_functions(H, cfg);

  poly2 Ht = H * complex(3.7);
  Ht.add_constant(complex(-1.3));
  auto gt = gap_functions(Ht, cfg);
  CHECK(std::abs(g0.c1 - gt.c1) < 1e-8);
  CHECK(std::abs(g0.c2 - gt.c2) < 1e-7);

  poly2 Hs = H.compose_affine(complex(0.85), complex(0.21), complex(-0.4));
  auto gs = gap_functions(Hs, cfg);
  CHECK(std::abs(g0.c1 - gs.c1) < 1e-8);
  CHECK(std::abs(g0.c2 - gs.c2) < 1e-7);
}

TEST_CASE("normalize pipeline: separable cubic") {
  config cfg;
  auto rep = normalize(hstar(), cfg);
  CHECK(rep.morse.ultra_morse);
  CHECK(rep.gaps.c_prime == doctest::Approx(1.0));
  auto vals = rep.normalized_points;
  REQUIRE(vals.size() == 4);
  double rmax = 0;
  for (auto& p : vals) rmax = std::max(rmax, std::abs(p.value));
  CHECK(std::abs(rmax - 2.0) < 1e-7);
  CHECK_THROWS_AS(
      normalize(poly2::from_terms(
                    {{3, 0, 1.0}, {1, 0, -3.0}, {0, 3, 1.0}, {0, 1, -3.0}}),
                cfg),
      error);
}
