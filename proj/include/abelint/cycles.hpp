#ifndef ABELINT_CYCLES_HPP
#define ABELINT_CYCLES_HPP

#include <array>
#include <functional>
#include <vector>

#include "abelint/poly2.hpp"

namespace abelint {

struct cpoint { complex x, y; };

inline double cdist(const cpoint& a, const cpoint& b) {
  return std::sqrt(std::norm(a.x - b.x) + std::norm(a.y - b.y));
}

// Polynomial 1-form A dx + B dy.
struct one_form {
  poly2 A, B;
  int k = -1, l = -1;  // set for the standard forms y x^k y^l dx
};

one_form monomial_form(int k, int l);  // y x^k y^l dx

// Closed discretized loop on the level curve {H = t}. Points are ordered;
// the loop is implicitly closed (last connects to first).
struct cycle {
  complex t;
  std::vector<cpoint> pts;
  int orientation = +1;

  double residual(const poly2& H) const;
  double circumference() const;
};

// Piecewise linear path in the t-plane.
struct path {
  std::vector<complex> v;

  double length() const;
  complex start() const { return v.front(); }
  complex end() const { return v.back(); }
  path reversed() const;
  path then(const path& q) const;  // concatenation, endpoints must match
  // Min distance from the polyline to a point.
  double distance_to(complex p) const;
};

path segment_path(complex a, complex b, int pieces = 1);
path arc_path(complex center, double radius, double ang0, double ang1,
              int min_pieces = 24);

// Accumulated angles of (t - a_i) along a path, one entry per listed point.
std::vector<double> winding_angles(const path& p,
                                   const std::vector<complex>& centers);

// Newton projection of a point onto {H = t} along conj(grad H).
cpoint project_to_level(const poly2& H, const poly2& Hx, const poly2& Hy,
                        cpoint p, complex t, const config& cfg, bool* ok);

// Trace the real oval of {H = t0} through (a projection of) the seed.
// Predictor-corrector with curvature-adaptive step, counterclockwise.
cycle trace_real_oval(const poly2& H, double t0, cpoint seed,
                      const config& cfg);

// Local vanishing cycle of the Morse point cp on the level cp.value + dt
// (|dt| small): Morse-model circle mapped back and projected.
cycle local_vanishing_cycle(const poly2& H, const critical_point& cp,
                            complex dt, const config& cfg);

// Continuation of a cycle along a path in the t-plane (Gauss-Manin
// transport of the supporting loop: dp = dt conj(grad H)/|grad H|^2 plus a
// Newton correction, with resampling into the [h_min, h_max] band).
cycle transport_cycle(const poly2& H, const cycle& c, const path& pth,
                      const config& cfg);

// Integral of the 1-form over the cycle: composite trapezoid with
// subdivision refinement until successive values agree to rel_tol.
complex integrate_form(const poly2& H, const cycle& c, const one_form& w,
                       const config& cfg, double rel_tol = 1e-9);

// Signed topological intersection index of two cycles on the same level
// curve (local chart orientation of transversal crossings).
int intersection_index(const poly2& H, const cycle& a, const cycle& b,
                       const config& cfg);

// Closed loop on {H = t} lifted from the circle |x - x_center| = x_radius
// by tracking a root of H(x, .) = t. The circuit starts at the basepoint
// x_center + x_radius; y_start selects the starting sheet by proximity in
// the fiber over that basepoint (ties are rejected as bad_argument). Throws
// open_component when the tracked sheet fails to close up after one circuit.
cycle cycle_from_x_loop(const poly2& H, complex t, complex x_center,
                        double x_radius, complex y_start, const config& cfg);

double signed_area(const std::vector<cpoint>& pts);  // real (x,y) polygon

}  // namespace abelint

#endif
