#ifndef ABELINT_TEST_HELPERS_HPP
#define ABELINT_TEST_HELPERS_HPP

#include <doctest.h>

#include <cmath>
#include <vector>

#include "abelint/normalize.hpp"
#include "abelint/poly2.hpp"

namespace abelint_test {

using namespace abelint;

// x^3 - 3x + y^3 - 1.5y: the separable cubic used across the suite.
// Critical points (+-1, +-sqrt(0.5)), values {+-(2+sqrt(.5)), +-(2-sqrt(.5))}.
inline poly2 hstar() {
  return poly2::from_terms({{3, 0, 1.0},
                            {1, 0, -3.0},
                            {0, 3, 1.0},
                            {0, 1, -1.5}});
}

// Independent critical point oracle: plain 2d Newton on grad H from a seed
// grid, deduplicated. No resultants involved.
inline std::vector<critical_point> grid_newton_critical_points(
    const poly2& H, double lo = -2.0, double hi = 2.0, int grid = 40) {
  poly2 hx = H.dx(), hy = H.dy();
  poly2 hxx = hx.dx(), hxy = hx.dy(), hyy = hy.dy();
  std::vector<critical_point> out;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      complex x(lo + (hi - lo) * i / (grid - 1.0), 0.0);
      complex y(lo + (hi - lo) * j / (grid - 1.0), 0.0);
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        complex fx = hx.eval(x, y), fy = hy.eval(x, y);
        if (std::abs(fx) + std::abs(fy) < 1e-12) { ok = true; break; }
        complex a = hxx.eval(x, y), b = hxy.eval(x, y), d = hyy.eval(x, y);
        complex det = a * d - b * b;
        if (std::abs(det) < 1e-30) break;
        complex sx = (fx * d - b * fy) / det, sy = (a * fy - fx * b) / det;
        x -= sx; y -= sy;
        if (std::abs(x) + std::abs(y) > 1e4) break;
      }
      if (!ok) continue;
      bool dup = false;
      for (auto& p : out)
        if (std::abs(p.x - x) + std::abs(p.y - y) < 1e-7) { dup = true; break; }
      if (dup) continue;
      critical_point cp;
      cp.x = x; cp.y = y; cp.value = H.eval(x, y);
      complex a = hxx.eval(x, y), b = hxy.eval(x, y), d = hyy.eval(x, y);
      cp.hessian_det = a * d - b * b;
      cp.morse = std::abs(cp.hessian_det) > 1e-8;
      out.push_back(cp);
    }
  return out;
}

inline void check_close(complex got, complex want, double tol) {
  CHECK(std::abs(got - want) <= tol);
}

}  // namespace abelint_test

#endif
