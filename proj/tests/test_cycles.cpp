#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "abelint/cycles.hpp"
#include "helpers.hpp"

using namespace abelint;
using namespace abelint_test;

namespace {

// Reference periods for the real oval of x^3 - 3x + y^3 - 1.5y, computed by
// an independent method: polar-ray bisection from the enclosed minimum
// (1, sqrt(.5)) with 4e5 rays and plain closed trapezoid sums. Stable to
// ~1e-9 relative against a 1e5-ray run.
constexpr double kOvalYdx25 = -2.616400718624e-01;   // I(y dx),  t = -2.5
constexpr double kOvalXYdx25 = -2.593601316823e-01;  // I(xy dx), t = -2.5
constexpr double kOvalYdx20 = -9.305200849887e-01;   // I(y dx),  t = -2.0

cycle hstar_oval(double t, const config& cfg) {
  return trace_real_oval(hstar(), t, {complex(1.0), complex(0.85)}, cfg);
}

}  // namespace

TEST_CASE("path utilities: length, concatenation, winding angles") {
  path s = segment_path(complex(0), complex(3, 4));
  CHECK(s.length() == doctest::Approx(5.0));
  path back = s.reversed();
  CHECK(back.start() == complex(3, 4));
  path round = s.then(back);
  CHECK(round.length() == doctest::Approx(10.0));
  CHECK(round.distance_to(complex(0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(segment_path(complex(0), complex(0, 2)).distance_to(complex(1, 1)) ==
        doctest::Approx(1.0));

  path loop = arc_path(complex(0), 1.0, 0.0, 2 * M_PI);
  auto w = winding_angles(loop, {complex(0), complex(5, 0)});
  CHECK(w[0] == doctest::Approx(2 * M_PI).epsilon(1e-6));
  CHECK(std::abs(w[1]) < 1e-6);
}

TEST_CASE("arc polylines respect the nominal clearance radius") {
  // Chords of a naive inscribed polygon dip below the circle radius; the
  // inflation must keep them at or outside it.
  complex c(0.3, -0.2);
  double r = 0.7;
  path a = arc_path(c, r, 0.4, 0.4 + 1.7);
  for (size_t i = 0; i + 1 < a.v.size(); ++i) {
    complex m = 0.5 * (a.v[i] + a.v[i + 1]);
    CHECK(std::abs(m - c) >= r - 1e-12);
  }
  // Endpoints sit on the nominal circle only up to the inflation; the path
  // start/end rays still point at the requested angles.
  CHECK(std::arg(a.v.front() - c) == doctest::Approx(0.4));
  CHECK(std::arg(a.v.back() - c) == doctest::Approx(0.4 + 1.7));
}

TEST_CASE("projection onto a level curve follows the gradient ray") {
  config cfg;
  poly2 H = poly2::from_terms({{2, 0, 1.0}, {0, 2, 1.0}});  // x^2 + y^2
  bool ok = false;
  cpoint p = project_to_level(H, H.dx(), H.dy(), {complex(1.2), complex(0)},
                              complex(1.0), cfg, &ok);
  CHECK(ok);
  check_close(p.x, complex(1.0), 1e-9);
  check_close(p.y, complex(0.0), 1e-9);
}

TEST_CASE("traced circle: closed-form area, circumference, periods") {
  config cfg;
  poly2 H = poly2::from_terms({{2, 0, 1.0}, {0, 2, 1.0}});
  cycle c = trace_real_oval(H, 1.0, {complex(1.1), complex(0.1)}, cfg);
  CHECK(c.residual(H) < 1e-8);
  CHECK(c.circumference() == doctest::Approx(2 * M_PI).epsilon(1e-5));
  // Polygon area of the raw sampling (no refinement): inscribed-chord
  // deficit is about h^2/6 relative, h <= 1e-2.
  std::vector<cpoint> rp = c.pts;
  CHECK(signed_area(rp) == doctest::Approx(M_PI).epsilon(1e-4));

  complex iy = integrate_form(H, c, monomial_form(0, 0), cfg);  // y dx
  check_close(iy, complex(-M_PI), 1e-6);
  one_form xdy;  // x dy integrates to +area on a counterclockwise loop
  xdy.A = poly2(0);
  xdy.B = poly2::from_terms({{1, 0, 1.0}});
  check_close(integrate_form(H, c, xdy, cfg), complex(M_PI), 1e-6);
}

TEST_CASE("oval periods match the ray-bisection reference values") {
  config cfg;
  poly2 H = hstar();
  cycle c25 = hstar_oval(-2.5, cfg);
  CHECK(c25.residual(H) < 1e-8);
  check_close(integrate_form(H, c25, monomial_form(0, 0), cfg),
              complex(kOvalYdx25), 5e-8);
  check_close(integrate_form(H, c25, monomial_form(1, 0), cfg),
              complex(kOvalXYdx25), 5e-8);

  cycle c20 = hstar_oval(-2.0, cfg);
  check_close(integrate_form(H, c20, monomial_form(0, 0), cfg),
              complex(kOvalYdx20), 5e-8);
}

TEST_CASE("exact forms have zero period") {
  config cfg;
  poly2 H = hstar();
  cycle c = hstar_oval(-2.5, cfg);
  one_form df;  // d(x^3 y^2) = 3x^2 y^2 dx + 2x^3 y dy
  df.A = poly2::from_terms({{2, 2, 3.0}});
  df.B = poly2::from_terms({{3, 1, 2.0}});
  CHECK(std::abs(integrate_form(H, c, df, cfg)) < 1e-8);
  one_form dh;  // dH restricted to a level curve is zero pointwise
  dh.A = H.dx();
  dh.B = H.dy();
  CHECK(std::abs(integrate_form(H, c, dh, cfg)) < 1e-8);
}

TEST_CASE("reversing a cycle negates its periods") {
  config cfg;
  poly2 H = hstar();
  cycle c = hstar_oval(-2.5, cfg);
  cycle r = c;
  std::reverse(r.pts.begin(), r.pts.end());
  complex a = integrate_form(H, c, monomial_form(0, 0), cfg);
  complex b = integrate_form(H, r, monomial_form(0, 0), cfg);
  check_close(a, -b, 1e-9);
}

TEST_CASE("local vanishing cycle agrees with the traced oval near a minimum") {
  config cfg;
  poly2 H = hstar();
  auto pts = critical_points(H, cfg);
  const critical_point* mn = nullptr;
  for (const auto& p : pts)
    if (!mn || p.value.real() < mn->value.real()) mn = &p;
  REQUIRE(mn != nullptr);
  CHECK(mn->value.real() == doctest::Approx(-2.0 - std::sqrt(0.5)));

  double dt = 0.01;
  cycle loc = local_vanishing_cycle(H, *mn, complex(dt), cfg);
  CHECK(loc.residual(H) < 1e-8);
  double t = mn->value.real() + dt;
  cycle tr = trace_real_oval(H, t, {complex(1.0), complex(0.78)}, cfg);
  double a = std::abs(integrate_form(H, loc, monomial_form(0, 0), cfg));
  double b = std::abs(integrate_form(H, tr, monomial_form(0, 0), cfg));
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
  // Leading-order Morse model: the enclosed area of the level ellipse is
  // pi dt / sqrt(Hxx Hyy / 4) at the minimum (1, sqrt(.5)).
  double ell = M_PI * dt / std::sqrt(3.0 * 3.0 * std::sqrt(0.5));
  CHECK(a == doctest::Approx(ell).epsilon(0.03));
}

TEST_CASE("transport: there-and-back is the identity on periods") {
  config cfg;
  poly2 H = hstar();
  cycle c = hstar_oval(-2.5, cfg);
  path out = segment_path(complex(-2.5), complex(-2.0, 0.4));
  path round = out.then(out.reversed());
  cycle back = transport_cycle(H, c, round, cfg);
  CHECK(back.residual(H) < 1e-8);
  check_close(back.t, complex(-2.5), 1e-12);
  check_close(integrate_form(H, back, monomial_form(0, 0), cfg),
              complex(kOvalYdx25), 1e-6);
}

TEST_CASE("transport continues the oval family across levels") {
  config cfg;
  poly2 H = hstar();
  cycle c = hstar_oval(-2.5, cfg);
  cycle moved = transport_cycle(H, c, segment_path(complex(-2.5), complex(-2.0)),
                                cfg);
  CHECK(moved.residual(H) < 1e-8);
  check_close(integrate_form(H, moved, monomial_form(0, 0), cfg),
              complex(kOvalYdx20), 1e-6);
  // Same homology class as the directly traced oval: their supports agree,
  // so the intersection index degenerates to zero.
  cycle direct = hstar_oval(-2.0, cfg);
  CHECK(intersection_index(H, moved, direct, cfg) == 0);
}

TEST_CASE("intersection index: self is zero, vanishing pair is unimodular") {
  config cfg;
  poly2 H = hstar();
  cycle oval = hstar_oval(-2.0, cfg);
  CHECK(intersection_index(H, oval, oval, cfg) == 0);

  // Cycle vanishing at the adjacent saddle (1, -sqrt(.5)), value -2+sqrt(.5),
  // carried down to the oval's level.
  auto pts = critical_points(H, cfg);
  const critical_point* sad = nullptr;
  for (const auto& p : pts)
    if (std::abs(p.value - complex(-2.0 + std::sqrt(0.5))) < 1e-6) sad = &p;
  REQUIRE(sad != nullptr);
  double t1 = -1.35;
  cycle v = local_vanishing_cycle(H, *sad, complex(t1) - sad->value, cfg);
  cycle vd = transport_cycle(H, v, segment_path(complex(t1), complex(-2.0)),
                             cfg);
  int idx = intersection_index(H, oval, vd, cfg);
  CHECK(std::abs(idx) == 1);
  CHECK(intersection_index(H, vd, oval, cfg) == -idx);
}

TEST_CASE("x-plane loops lift to cycles sheet by sheet") {
  config cfg;
  poly2 H = hstar();
  // The circle |x - 1| = 0.4 encloses exactly the two branch points of the
  // oval family at t = -2.5. Over the basepoint x = 1.4 the fiber holds a
  // conjugate pair (the oval sheets, gone complex past the fold) and one
  // real root near -1.49 (analytic across the whole disk).
  auto fib = H.restrict_x(complex(1.4));
  fib[0] -= complex(-2.5);
  auto roots = poly_roots(fib, 1e-11);
  REQUIRE(roots.size() == 3);
  complex y_pair, y_flat;
  for (complex r : roots) {
    if (std::abs(r.imag()) < 0.1) y_flat = r;
    else if (r.imag() < 0) y_pair = r;
  }
  CHECK(y_flat.real() == doctest::Approx(-1.49).epsilon(0.01));

  cycle lifted = cycle_from_x_loop(H, complex(-2.5), complex(1.0), 0.4,
                                   y_pair, cfg);
  CHECK(lifted.residual(H) < 1e-7);
  double period = std::abs(integrate_form(H, lifted, monomial_form(0, 0), cfg));
  CHECK(period == doctest::Approx(-kOvalYdx25).epsilon(1e-6));

  cycle flat = cycle_from_x_loop(H, complex(-2.5), complex(1.0), 0.4,
                                 y_flat, cfg);
  CHECK(std::abs(integrate_form(H, flat, monomial_form(0, 0), cfg)) < 1e-7);

  // A mid-pair starting value selects no sheet.
  CHECK_THROWS_AS(cycle_from_x_loop(H, complex(-2.5), complex(1.0), 0.4,
                                    complex(y_pair.real()), cfg),
                  error);
}
