#include "abelint/normalize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace abelint {

namespace {

disk disk_from(complex a, complex b) {
  return {(a + b) / 2.0, std::abs(a - b) / 2.0};
}

disk disk_from(complex a, complex b, complex c) {
  // Circumcircle; falls back to the largest two-point disk when collinear.
  double ax = a.real(), ay = a.imag(), bx = b.real(), by = b.imag(),
         cx = c.real(), cy = c.imag();
  double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  if (std::abs(d) < 1e-14 * (std::abs(a) + std::abs(b) + std::abs(c) + 1)) {
    disk best = disk_from(a, b);
    for (auto dd : {disk_from(a, c), disk_from(b, c)})
      if (dd.radius > best.radius) best = dd;
    return best;
  }
  double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) +
               (cx * cx + cy * cy) * (ay - by)) / d;
  double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) +
               (cx * cx + cy * cy) * (bx - ax)) / d;
  complex ctr(ux, uy);
  return {ctr, std::abs(a - ctr)};
}

bool in_disk(const disk& d, complex p, double slack) {
  return std::abs(p - d.center) <= d.radius + slack;
}

}  // namespace

disk minimal_enclosing_disk(std::vector<complex> pts, uint64_t seed) {
  if (pts.empty()) fail(errc::bad_argument, "empty point set");
  double scale = 1e-12;
  for (auto p : pts) scale = std::max(scale, std::abs(p));
  double slack = 1e-12 * scale;
  std::mt19937_64 rng(seed);
  std::shuffle(pts.begin(), pts.end(), rng);
  disk d{pts[0], 0};
  for (size_t i = 1; i < pts.size(); ++i) {
    if (in_disk(d, pts[i], slack)) continue;
    d = {pts[i], 0};
    for (size_t j = 0; j < i; ++j) {
      if (in_disk(d, pts[j], slack)) continue;
      d = disk_from(pts[i], pts[j]);
      for (size_t k = 0; k < j; ++k) {
        if (in_disk(d, pts[k], slack)) continue;
        d = disk_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return d;
}

balance_result balance(const poly2& H, const config& cfg) {
  if (H.degree() < 3) fail(errc::degree_too_low, "balance needs degree >= 3");
  auto pts = critical_points(H, cfg);
  if (pts.empty()) fail(errc::not_enough_critical_values, "no critical values");
  std::vector<complex> vals;
  for (auto& p : pts) vals.push_back(p.value);
  disk d = minimal_enclosing_disk(vals, cfg.tol.seed);
  if (d.radius < cfg.tol.value_coincidence)
    fail(errc::not_enough_critical_values,
         "critical values coincide, no balancing scale");
  balance_result out;
  out.value_disk = d;
  out.map.a = 2.0 / d.radius;
  out.map.b = -2.0 * d.center / d.radius;
  out.G = H * out.map.a;
  out.G.add_constant(out.map.b);
  return out;
}

double hmax_norm(const poly2& h, double rel_tol) {
  if (h.is_zero()) fail(errc::zero_polynomial, "sup norm of zero polynomial");
  // |h(cos phi, e^{i theta} sin phi)| covers the sphere up to a phase.
  auto f = [&](double phi, double th) {
    return std::abs(h.eval(std::cos(phi), std::polar(std::sin(phi), th)));
  };
  int N = 256;
  double best = 0, bphi = 0, bth = 0;
  for (int i = 0; i <= N; ++i) {
    double phi = (M_PI / 2) * i / N;
    for (int j = 0; j < N; ++j) {
      double th = 2 * M_PI * j / N;
      double v = f(phi, th);
      if (v > best) { best = v; bphi = phi; bth = th; }
    }
  }
  double dphi = (M_PI / 2) / N, dth = 2 * M_PI / N;
  for (int round = 0; round < 60; ++round) {
    double prev = best;
    for (int i = -3; i <= 3; ++i)
      for (int j = -3; j <= 3; ++j) {
        double phi = std::clamp(bphi + i * dphi / 3, 0.0, M_PI / 2);
        double th = bth + j * dth / 3;
        double v = f(phi, th);
        if (v > best) { best = v; bphi = phi; bth = th; }
      }
    dphi /= 2.5;
    dth /= 2.5;
    if (round > 8 && best - prev <= rel_tol * best && dphi < 1e-12) break;
  }
  return best;
}

rescale_result rescale(const poly2& G, const config& cfg) {
  if (G.degree() < 3) fail(errc::degree_too_low, "rescale needs degree >= 3");
  poly2 h = G.higher_form();
  double norm = hmax_norm(h);
  int d = G.degree();
  double s = std::pow(norm, -1.0 / d);
  auto pts = critical_points(G, cfg);
  if (pts.empty()) fail(errc::not_enough_critical_values, "no critical points");
  // Critical points after scaling are p/s; pick smallest modulus, then
  // lexicographic on (Re x, Im x, Re y, Im y).
  complex bx = pts[0].x, by = pts[0].y;
  auto key = [](complex x, complex y) {
    return std::array<double, 5>{std::norm(x) + std::norm(y), x.real(),
                                 x.imag(), y.real(), y.imag()};
  };
  for (const auto& p : pts)
    if (key(p.x, p.y) < key(bx, by)) { bx = p.x; by = p.y; }
  rescale_result out;
  out.frame.s = s;
  out.frame.u = bx;  // normalized (x,y) maps to (s x + u, s y + v)
  out.frame.v = by;
  out.N = G.compose_affine(s, bx, by);
  return out;
}

double fs_distance(complex x1, complex y1, complex x2, complex y2) {
  double ip = std::abs(x1 * std::conj(x2) + y1 * std::conj(y2));
  double n1 = std::sqrt(std::norm(x1) + std::norm(y1));
  double n2 = std::sqrt(std::norm(x2) + std::norm(y2));
  if (n1 == 0 || n2 == 0) fail(errc::bad_argument, "zero projective vector");
  return std::acos(std::clamp(ip / (n1 * n2), 0.0, 1.0));
}

gap_report gap_functions(const poly2& H, const config& cfg) {
  if (H.degree() < 3) fail(errc::degree_too_low, "gaps need degree >= 3");
  gap_report rep;
  int d = H.degree();
  rep.n = d - 1;

  // c1: scaled minimal Fubini-Study distance between roots of the top form.
  poly2 h = H.higher_form();
  if (h.is_zero(1e-14 * std::max(1.0, H.max_abs_coeff())))
    fail(errc::zero_polynomial, "vanishing top form");
  auto cs = h.restrict_y(complex(1));
  double cm = 0;
  for (auto& c : cs) cm = std::max(cm, std::abs(c));
  std::vector<std::pair<complex, complex>> dirs;
  int effective = int(cs.size()) - 1;
  while (effective > 0 && std::abs(cs[effective]) <= 1e-12 * cm) --effective;
  for (complex r : poly_roots(cs, 1e-10)) dirs.push_back({r, complex(1)});
  for (int k = effective; k < d; ++k) dirs.push_back({complex(1), complex(0)});
  double minfs = M_PI;  // above the metric diameter pi/2
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t j = i + 1; j < dirs.size(); ++j)
      minfs = std::min(minfs, fs_distance(dirs[i].first, dirs[i].second,
                                          dirs[j].first, dirs[j].second));
  if (dirs.size() < 2) minfs = 0;  // repeated root collapsed: not square free
  rep.c1 = rep.n * minfs;

  // c2: scaled minimal distance between critical values of the balanced
  // polynomial.
  auto bal = balance(H, cfg);
  auto pts = critical_points(bal.G, cfg);
  double mind = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      mind = std::min(mind, std::abs(pts[i].value - pts[j].value));
  if (!std::isfinite(mind)) mind = 0;
  rep.c2 = rep.n * rep.n * mind;

  rep.c_prime = std::min(rep.c1, 1.0);
  rep.c_dprime = std::min(rep.c2, 1.0);
  rep.nu = rep.c_dprime / (4.0 * rep.n * rep.n);
  rep.log_A = std::pow(rep.n, 4) / rep.c_dprime;
  return rep;
}

normalization_report normalize(const poly2& H, const config& cfg) {
  normalization_report rep;
  rep.input = H;
  rep.morse = is_ultra_morse(H, cfg);
  if (!rep.morse.ultra_morse)
    fail(errc::not_ultra_morse, "not ultra-Morse: " + rep.morse.diagnosis);
  rep.balanced = balance(H, cfg);
  rep.rescaled = rescale(rep.balanced.G, cfg);
  rep.gaps = gap_functions(H, cfg);
  rep.normalized_points = critical_points(rep.rescaled.N, cfg);
  return rep;
}

}  // namespace abelint
