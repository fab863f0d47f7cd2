#include "abelint/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace abelint {

one_form monomial_form(int k, int l) {
  one_form w;
  w.k = k;
  w.l = l;
  w.A = poly2::from_terms({{k, l + 1, complex(1)}});
  w.B = poly2(0);
  return w;
}

double cycle::residual(const poly2& H) const {
  double r = 0;
  for (const auto& p : pts) r = std::max(r, std::abs(H.eval(p.x, p.y) - t));
  return r;
}

double cycle::circumference() const {
  double L = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    L += cdist(pts[i], pts[(i + 1) % pts.size()]);
  return L;
}

double path::length() const {
  double L = 0;
  for (size_t i = 0; i + 1 < v.size(); ++i) L += std::abs(v[i + 1] - v[i]);
  return L;
}

path path::reversed() const {
  path p = *this;
  std::reverse(p.v.begin(), p.v.end());
  return p;
}

path path::then(const path& q) const {
  if (v.empty()) return q;
  if (q.v.empty()) return *this;
  if (std::abs(v.back() - q.v.front()) > 1e-9)
    fail(errc::bad_argument, "path concatenation endpoint mismatch");
  path p = *this;
  p.v.insert(p.v.end(), q.v.begin() + 1, q.v.end());
  return p;
}

double path::distance_to(complex p) const {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    complex a = v[i], b = v[i + 1];
    complex ab = b - a;
    double L2 = std::norm(ab);
    double s = L2 > 0 ? std::clamp(((p - a) * std::conj(ab)).real() / L2, 0.0, 1.0)
                      : 0.0;
    best = std::min(best, std::abs(p - (a + s * ab)));
  }
  if (v.size() == 1) best = std::abs(p - v[0]);
  return best;
}

path segment_path(complex a, complex b, int pieces) {
  path p;
  for (int i = 0; i <= pieces; ++i)
    p.v.push_back(a + (b - a) * (double(i) / pieces));
  return p;
}

path arc_path(complex center, double radius, double ang0, double ang1,
              int min_pieces) {
  int k = std::max(min_pieces,
                   int(std::ceil(std::abs(ang1 - ang0) / (2 * M_PI) * 64)));
  // Inflate so the chords of the sampled arc never dip below the nominal
  // radius (clearance audits measure the polyline).
  double r = radius / std::cos(std::abs(ang1 - ang0) / (2.0 * k));
  path p;
  for (int i = 0; i <= k; ++i) {
    double a = ang0 + (ang1 - ang0) * double(i) / k;
    p.v.push_back(center + std::polar(r, a));
  }
  return p;
}

std::vector<double> winding_angles(const path& p,
                                   const std::vector<complex>& centers) {
  std::vector<double> acc(centers.size(), 0.0);
  for (size_t i = 0; i + 1 < p.v.size(); ++i)
    for (size_t c = 0; c < centers.size(); ++c) {
      complex u = p.v[i] - centers[c], w = p.v[i + 1] - centers[c];
      acc[c] += std::arg(w / u);
    }
  return acc;
}

cpoint project_to_level(const poly2& H, const poly2& Hx, const poly2& Hy,
                        cpoint p, complex t, const config& cfg, bool* ok) {
  if (ok) *ok = false;
  for (int it = 0; it < 30; ++it) {
    complex f = H.eval(p.x, p.y) - t;
    if (std::abs(f) <= cfg.tol.on_curve) {
      if (ok) *ok = true;
      return p;
    }
    complex gx = Hx.eval(p.x, p.y), gy = Hy.eval(p.x, p.y);
    double g2 = std::norm(gx) + std::norm(gy);
    if (g2 < 1e-24) return p;
    p.x -= std::conj(gx) * f / g2;
    p.y -= std::conj(gy) * f / g2;
  }
  if (std::abs(H.eval(p.x, p.y) - t) <= cfg.tol.on_curve && ok) *ok = true;
  return p;
}

double signed_area(const std::vector<cpoint>& pts) {
  double A = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const cpoint& a = pts[i];
    const cpoint& b = pts[(i + 1) % pts.size()];
    A += a.x.real() * b.y.real() - b.x.real() * a.y.real();
  }
  return A / 2;
}

namespace {

// Uniform resample of a closed loop on {H=t}: chord-length parametrization,
// linear interpolation, Newton projection back onto the level curve.
void resample_cycle(const poly2& H, const poly2& Hx, const poly2& Hy, cycle& c,
                    const config& cfg) {
  size_t n = c.pts.size();
  if (n < 3) return;
  double L = c.circumference();
  if (L <= 0) return;
  double h = std::clamp(L / 256.0, cfg.tol.h_min, cfg.tol.h_max);
  size_t m = std::max<size_t>(48, size_t(std::ceil(L / h)));
  if (m > 200000) fail(errc::resample_overflow, "resampled cycle too large");
  std::vector<double> s(n + 1, 0.0);
  for (size_t i = 0; i < n; ++i)
    s[i + 1] = s[i] + cdist(c.pts[i], c.pts[(i + 1) % n]);
  std::vector<cpoint> out;
  out.reserve(m);
  size_t seg = 0;
  for (size_t k = 0; k < m; ++k) {
    double target = L * double(k) / double(m);
    while (seg + 1 < n + 1 && s[seg + 1] < target) ++seg;
    const cpoint& a = c.pts[seg % n];
    const cpoint& b = c.pts[(seg + 1) % n];
    double den = s[seg + 1] - s[seg];
    double w = den > 0 ? (target - s[seg]) / den : 0.0;
    cpoint p{a.x + (b.x - a.x) * w, a.y + (b.y - a.y) * w};
    bool ok = false;
    p = project_to_level(H, Hx, Hy, p, c.t, cfg, &ok);
    if (!ok) fail(errc::projection_diverged, "resample projection failed");
    out.push_back(p);
  }
  c.pts = std::move(out);
}

}  // namespace

cycle trace_real_oval(const poly2& H, double t0, cpoint seed,
                      const config& cfg) {
  if (H.degree() < 2) fail(errc::degree_too_low, "tracing needs degree >= 2");
  poly2 Hx = H.dx(), Hy = H.dy();
  auto gval = [&](double x, double y) {
    return std::pair<double, double>{Hx.eval(x, y).real(), Hy.eval(x, y).real()};
  };
  double x = seed.x.real(), y = seed.y.real();
  // Project the seed onto the curve along the real gradient.
  for (int it = 0; it < 100; ++it) {
    double f = H.eval(x, y).real() - t0;
    if (std::abs(f) < cfg.tol.on_curve) break;
    auto [gx, gy] = gval(x, y);
    double g2 = gx * gx + gy * gy;
    if (g2 < 1e-20)
      fail(errc::singular_encounter, "seed projection hit a critical point");
    x -= gx * f / g2;
    y -= gy * f / g2;
  }
  if (std::abs(H.eval(x, y).real() - t0) > 1e-7)
    fail(errc::projection_diverged, "seed does not reach the level curve");

  double h = cfg.tol.h_max;
  double x0 = x, y0 = y;
  std::vector<cpoint> pts;
  double travelled = 0;
  const double budget = 2.0e4 * h;
  while (true) {
    pts.push_back({complex(x, 0), complex(y, 0)});
    auto [gx, gy] = gval(x, y);
    double g = std::hypot(gx, gy);
    if (g < 1e-8) fail(errc::singular_encounter, "gradient vanished on oval");
    // Unit tangent; orientation fixed after closure.
    double tx = -gy / g, ty = gx / g;
    double px = x + h * tx, py = y + h * ty;
    for (int it = 0; it < 20; ++it) {
      double f = H.eval(px, py).real() - t0;
      if (std::abs(f) < cfg.tol.on_curve) break;
      auto [cx, cy] = gval(px, py);
      double c2 = cx * cx + cy * cy;
      if (c2 < 1e-20)
        fail(errc::singular_encounter, "corrector hit a critical point");
      px -= cx * f / c2;
      py -= cy * f / c2;
    }
    if (std::abs(H.eval(px, py).real() - t0) > 1e-7) {
      h /= 2;  // sharp turn; retry with a smaller step
      if (h < cfg.tol.h_min / 16)
        fail(errc::step_underflow, "tracer step underflow");
      pts.pop_back();
      continue;
    }
    travelled += std::hypot(px - x, py - y);
    x = px;
    y = py;
    if (travelled > budget)
      fail(errc::open_component, "level component does not close up");
    if (std::abs(x) + std::abs(y) > 1e3)
      fail(errc::open_component, "level component escapes to infinity");
    if (pts.size() > 8 && std::hypot(x - x0, y - y0) < h) break;
  }
  cycle c;
  c.t = complex(t0, 0);
  c.pts = std::move(pts);
  if (signed_area(c.pts) < 0) std::reverse(c.pts.begin(), c.pts.end());
  c.orientation = +1;
  resample_cycle(H, Hx, Hy, c, cfg);
  return c;
}

cycle local_vanishing_cycle(const poly2& H, const critical_point& cp,
                            complex dt, const config& cfg) {
  if (!cp.morse) fail(errc::bad_argument, "vanishing cycle needs a Morse point");
  poly2 Hx = H.dx(), Hy = H.dy();
  complex A = Hx.dx().eval(cp.x, cp.y);
  complex B = Hx.dy().eval(cp.x, cp.y);
  complex C = Hy.dy().eval(cp.x, cp.y);
  // Lagrange reduction of Q(w) = A wx^2 + 2 B wx wy + C wy^2 to u^2 + v^2:
  // returns w(u, v) as a linear map.
  complex m11, m12, m21, m22;  // (wx, wy) = M (u, v)
  double scale = std::abs(A) + std::abs(B) + std::abs(C);
  if (std::abs(A) >= std::abs(C) && std::abs(A) > 1e-10 * scale) {
    complex D = C - B * B / A;
    complex ra = std::sqrt(A), rd = std::sqrt(D);
    m11 = 1.0 / ra;
    m12 = -(B / A) / rd;
    m21 = complex(0);
    m22 = 1.0 / rd;
  } else if (std::abs(C) > 1e-10 * scale) {
    complex D = A - B * B / C;
    complex rc = std::sqrt(C), rd = std::sqrt(D);
    m21 = 1.0 / rc;
    m22 = -(B / C) / rd;
    m11 = complex(0);
    m12 = 1.0 / rd;
  } else {
    complex rb = std::sqrt(B / 2.0);
    m11 = 0.5 / rb;
    m12 = complex(0, -0.5) / rb;
    m21 = 0.5 / rb;
    m22 = complex(0, 0.5) / rb;
  }
  complex rho = std::sqrt(2.0 * dt);
  double mapscale = std::max({std::abs(m11), std::abs(m12), std::abs(m21),
                              std::abs(m22)});
  double approx_len = 2 * M_PI * std::abs(rho) * mapscale;
  int N = std::max<int>(64, int(approx_len / (cfg.tol.h_max / 2)));
  N = std::min(N, 4096);
  cycle c;
  c.t = cp.value + dt;
  c.pts.reserve(N);
  for (int k = 0; k < N; ++k) {
    double ps = 2 * M_PI * k / N;
    complex u = rho * std::cos(ps), v = rho * std::sin(ps);
    cpoint p{cp.x + m11 * u + m12 * v, cp.y + m21 * u + m22 * v};
    bool ok = false;
    cpoint q = project_to_level(H, Hx, Hy, p, c.t, cfg, &ok);
    double moved = cdist(p, q);
    if (!ok || moved > 0.75 * std::abs(rho) * mapscale + 1e-12)
      fail(errc::projection_diverged,
           "Morse model point failed to project onto the level curve");
    c.pts.push_back(q);
  }
  c.orientation = +1;
  resample_cycle(H, Hx, Hy, c, cfg);
  return c;
}

cycle transport_cycle(const poly2& H, const cycle& c0, const path& pth,
                      const config& cfg) {
  if (pth.v.empty()) fail(errc::bad_argument, "empty transport path");
  if (std::abs(pth.start() - c0.t) > 1e-9)
    fail(errc::bad_argument, "transport path does not start at the cycle level");
  poly2 Hx = H.dx(), Hy = H.dy();
  cycle c = c0;
  const double disp_cap = cfg.tol.h_max;  // max point displacement per step
  for (size_t seg = 0; seg + 1 < pth.v.size(); ++seg) {
    complex ta = pth.v[seg], tb = pth.v[seg + 1];
    double seglen = std::abs(tb - ta);
    if (seglen == 0) continue;
    double s = 0;
    while (s < 1.0) {
      // Least per-point gradient bounds the admissible t step.
      double gmin = std::numeric_limits<double>::infinity();
      for (const auto& p : c.pts) {
        double g2 = std::norm(Hx.eval(p.x, p.y)) + std::norm(Hy.eval(p.x, p.y));
        gmin = std::min(gmin, std::sqrt(g2));
      }
      if (gmin < 1e-10)
        fail(errc::singular_encounter, "transport grazed a critical point");
      double ds = std::min(1.0 - s, disp_cap * gmin / seglen);
      bool accepted = false;
      while (!accepted) {
        complex t_new = ta + (tb - ta) * (s + ds);
        complex dtc = (tb - ta) * ds;
        std::vector<cpoint> next(c.pts.size());
        bool all_ok = true;
        for (size_t i = 0; i < c.pts.size(); ++i) {
          const cpoint& p = c.pts[i];
          complex gx = Hx.eval(p.x, p.y), gy = Hy.eval(p.x, p.y);
          double g2 = std::norm(gx) + std::norm(gy);
          cpoint q{p.x + std::conj(gx) * dtc / g2, p.y + std::conj(gy) * dtc / g2};
          bool ok = false;
          q = project_to_level(H, Hx, Hy, q, t_new, cfg, &ok);
          if (!ok || cdist(p, q) > 4 * disp_cap) {
            all_ok = false;
            break;
          }
          next[i] = q;
        }
        if (all_ok) {
          c.pts = std::move(next);
          c.t = t_new;
          s += ds;
          accepted = true;
        } else {
          ds /= 2;
          if (ds * seglen < 1e-13)
            fail(errc::step_underflow, "transport step underflow");
        }
      }
      // Keep the discretization inside the sampling band.
      double maxgap = 0, mingap = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < c.pts.size(); ++i) {
        double d = cdist(c.pts[i], c.pts[(i + 1) % c.pts.size()]);
        maxgap = std::max(maxgap, d);
        mingap = std::min(mingap, d);
      }
      double L = c.circumference();
      double lo = std::min(cfg.tol.h_min, L / 512.0);
      if (maxgap > cfg.tol.h_max || mingap < lo / 4)
        resample_cycle(H, Hx, Hy, c, cfg);
    }
    c.t = tb;
  }
  return c;
}

complex integrate_form(const poly2& H, const cycle& c0, const one_form& w,
                       const config& cfg, double rel_tol) {
  poly2 Hx = H.dx(), Hy = H.dy();
  std::vector<cpoint> pts = c0.pts;
  if (pts.size() < 3) fail(errc::bad_argument, "cycle too small to integrate");
  auto trapezoid = [&](const std::vector<cpoint>& ps, double* var) {
    complex I(0);
    double v = 0;
    size_t n = ps.size();
    for (size_t i = 0; i < n; ++i) {
      const cpoint& a = ps[i];
      const cpoint& b = ps[(i + 1) % n];
      complex fa = w.A.eval(a.x, a.y), fb = w.A.eval(b.x, b.y);
      complex ga = w.B.eval(a.x, a.y), gb = w.B.eval(b.x, b.y);
      complex term = 0.5 * (fa + fb) * (b.x - a.x) + 0.5 * (ga + gb) * (b.y - a.y);
      I += term;
      v += 0.5 * (std::abs(fa) + std::abs(fb)) * std::abs(b.x - a.x) +
           0.5 * (std::abs(ga) + std::abs(gb)) * std::abs(b.y - a.y);
    }
    if (var) *var = v;
    return I;
  };
  double var = 0;
  complex prev = trapezoid(pts, &var);
  complex rich_prev(0);
  bool have_rich = false;
  for (int level = 0; level < cfg.max_quad_levels; ++level) {
    if (pts.size() > 300000)
      fail(errc::no_convergence, "quadrature refinement exhausted its budget");
    std::vector<cpoint> fine;
    fine.reserve(pts.size() * 2);
    size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
      const cpoint& a = pts[i];
      const cpoint& b = pts[(i + 1) % n];
      fine.push_back(a);
      cpoint mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
      bool ok = false;
      mid = project_to_level(H, Hx, Hy, mid, c0.t, cfg, &ok);
      if (!ok)
        fail(errc::projection_diverged, "quadrature midpoint projection failed");
      fine.push_back(mid);
    }
    pts = std::move(fine);
    complex cur = trapezoid(pts, &var);
    // Chord bisection halves h, so the trapezoid error drops by 4; the
    // Richardson combination cancels the h^2 term. The tolerance floor is
    // tied to the total variation so near-zero integrals still terminate.
    complex rich = (4.0 * cur - prev) / 3.0;
    double atol =
        rel_tol * std::max(std::abs(rich), 1e-2 * var + 1e-12);
    if (have_rich && std::abs(rich - rich_prev) <= atol) return rich;
    rich_prev = rich;
    have_rich = true;
    prev = cur;
  }
  fail(errc::no_convergence, "loop integral did not converge");
}

namespace {

struct crossing {
  double s;       // parameter on a (segment index + fraction)
  cpoint where;
  int sign;
  double quality;
};

}  // namespace

int intersection_index(const poly2& H, const cycle& a, const cycle& b,
                       const config& cfg) {
  if (std::abs(a.t - b.t) > 1e-9)
    fail(errc::bad_argument, "intersection of cycles on different levels");
  poly2 Hx = H.dx(), Hy = H.dy();

  // Same support: self intersection vanishes by skew symmetry.
  if (a.pts.size() == b.pts.size()) {
    size_t hits = 0;
    for (size_t i = 0; i < a.pts.size(); i += std::max<size_t>(1, a.pts.size() / 64)) {
      double dmin = std::numeric_limits<double>::infinity();
      for (const auto& q : b.pts) dmin = std::min(dmin, cdist(a.pts[i], q));
      if (dmin < cfg.tol.h_min) ++hits;
    }
    size_t samples = (a.pts.size() + std::max<size_t>(1, a.pts.size() / 64) - 1) /
                     std::max<size_t>(1, a.pts.size() / 64);
    if (samples > 0 && hits * 2 > samples) return 0;
  }

  double spacing = 0;
  for (size_t i = 0; i < a.pts.size(); ++i)
    spacing = std::max(spacing, cdist(a.pts[i], a.pts[(i + 1) % a.pts.size()]));
  for (size_t i = 0; i < b.pts.size(); ++i)
    spacing = std::max(spacing, cdist(b.pts[i], b.pts[(i + 1) % b.pts.size()]));
  double near_tol = 2.5 * spacing;

  std::vector<crossing> found;
  size_t na = a.pts.size(), nb = b.pts.size();
  for (size_t i = 0; i < na; ++i) {
    const cpoint& a0 = a.pts[i];
    const cpoint& a1 = a.pts[(i + 1) % na];
    for (size_t j = 0; j < nb; ++j) {
      const cpoint& b0 = b.pts[j];
      const cpoint& b1 = b.pts[(j + 1) % nb];
      if (cdist(a0, b0) > near_tol && cdist(a0, b1) > near_tol &&
          cdist(a1, b0) > near_tol && cdist(a1, b1) > near_tol)
        continue;
      // Chart coordinate: the one whose conjugate gradient component wins
      // (graph over x needs Hy != 0 and vice versa).
      complex gx = Hx.eval(a0.x, a0.y), gy = Hy.eval(a0.x, a0.y);
      bool chart_x = std::abs(gy) >= std::abs(gx);
      complex wa0 = chart_x ? a0.x : a0.y, wa1 = chart_x ? a1.x : a1.y;
      complex wb0 = chart_x ? b0.x : b0.y, wb1 = chart_x ? b1.x : b1.y;
      complex za0 = chart_x ? a0.y : a0.x, za1 = chart_x ? a1.y : a1.x;
      complex zb0 = chart_x ? b0.y : b0.x, zb1 = chart_x ? b1.y : b1.x;
      complex da = wa1 - wa0, db = wb1 - wb0;
      double M00 = da.real(), M01 = -db.real();
      double M10 = da.imag(), M11 = -db.imag();
      double det = M00 * M11 - M01 * M10;
      double norm_m = std::abs(da) * std::abs(db);
      if (std::abs(det) < 1e-12 * std::max(norm_m, 1e-300)) continue;
      double r0 = (wb0 - wa0).real(), r1 = (wb0 - wa0).imag();
      double s = (r0 * M11 - M01 * r1) / det;
      double r = (M00 * r1 - r0 * M10) / det;
      if (s < -0.05 || s > 1.05 || r < -0.05 || r > 1.05) continue;
      // Same sheet check: the complementary coordinate must agree too.
      complex za = za0 + (za1 - za0) * s, zb = zb0 + (zb1 - zb0) * r;
      if (std::abs(za - zb) > near_tol) continue;
      int sgn;
      double cr = (std::conj(da) * db).imag();
      if (std::abs(cr) < cfg.tol.match_distance * norm_m)
        fail(errc::tangential_intersection,
             "cycles meet tangentially; no transversal sign");
      sgn = cr > 0 ? 1 : -1;
      crossing c;
      c.s = double(i) + std::clamp(s, 0.0, 1.0);
      c.where = {chart_x ? wa0 + da * s : za, chart_x ? za : wa0 + da * s};
      c.sign = sgn;
      c.quality = std::abs(det) / std::max(norm_m, 1e-300);
      found.push_back(c);
    }
  }
  // Cluster crossings that describe the same geometric point.
  std::sort(found.begin(), found.end(),
            [](const crossing& u, const crossing& v) { return u.s < v.s; });
  int index = 0;
  std::vector<crossing> kept;
  for (const auto& c : found) {
    bool dup = false;
    for (const auto& k : kept)
      if (cdist(c.where, k.where) < 2.0 * spacing) {
        dup = true;
        break;
      }
    if (!dup) {
      kept.push_back(c);
      index += c.sign;
    }
  }
  return index;
}

cycle cycle_from_x_loop(const poly2& H, complex t, complex x_center,
                        double x_radius, complex y_start, const config& cfg) {
  poly2 Hx = H.dx(), Hy = H.dy();
  // Snap the requested sheet to the fiber over the basepoint
  // x_center + x_radius, where the circuit starts and ends.
  {
    auto cs = H.restrict_x(x_center + x_radius);
    cs[0] -= t;
    auto roots = poly_roots(cs, 1e-11);
    if (roots.empty()) fail(errc::open_component, "fiber over basepoint empty");
    complex best = roots[0];
    double bd = std::abs(roots[0] - y_start);
    double second = std::numeric_limits<double>::infinity();
    for (complex r : roots) {
      double d = std::abs(r - y_start);
      if (d < bd) {
        second = bd;
        bd = d;
        best = r;
      } else if (std::abs(r - best) > 1e-12) {
        second = std::min(second, d);
      }
    }
    if (bd > 0.95 * second)
      fail(errc::bad_argument,
           "starting value does not select a sheet over the basepoint");
    y_start = best;
  }
  int N = 512;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<cpoint> pts;
    complex y = y_start;
    bool jumped = false;
    for (int k = 0; k <= N; ++k) {
      complex x = x_center + std::polar(x_radius, 2 * M_PI * k / N);
      auto cs = H.restrict_x(x);
      cs[0] -= t;
      auto roots = poly_roots(cs, 1e-11);
      if (roots.empty()) fail(errc::open_component, "fiber lost all roots");
      complex bestr = roots[0];
      double bd = std::abs(roots[0] - y);
      double second = std::numeric_limits<double>::infinity();
      for (complex r : roots) {
        double d = std::abs(r - y);
        if (d < bd) {
          second = bd;
          bd = d;
          bestr = r;
        } else {
          second = std::min(second, d);
        }
      }
      if (bd > 0.45 * second) jumped = true;  // ambiguous tracking
      y = bestr;
      if (k < N) pts.push_back({x, y});
    }
    if (jumped && attempt + 1 < 4) {
      N *= 2;
      continue;
    }
    if (std::abs(y - y_start) > 1e-6 * (1 + std::abs(y_start)))
      fail(errc::open_component,
           "sheet does not close up after one circuit of the x loop");
    cycle c;
    c.t = t;
    c.pts = std::move(pts);
    c.orientation = +1;
    resample_cycle(H, Hx, Hy, c, cfg);
    if (c.residual(H) > 1e-7)
      fail(errc::projection_diverged, "lifted loop left the level curve");
    return c;
  }
  fail(errc::open_component, "sheet tracking stayed ambiguous");
}

}  // namespace abelint
