#include "abelint/poly2.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <tuple>

namespace abelint {

const char* errc_name(errc e) {
  switch (e) {
    case errc::ok: return "Ok";
    case errc::parse_error: return "ParseError";
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::degree_too_low: return "DegreeTooLow";
    case errc::non_isolated_critical_locus: return "NonIsolatedCriticalLocus";
    case errc::not_enough_critical_values: return "NotEnoughCriticalValues";
    case errc::not_ultra_morse: return "NotUltraMorse";
    case errc::singular_encounter: return "SingularEncounter";
    case errc::open_component: return "OpenComponent";
    case errc::projection_diverged: return "ProjectionDiverged";
    case errc::step_underflow: return "StepUnderflow";
    case errc::resample_overflow: return "ResampleOverflow";
    case errc::no_convergence: return "NoConvergence";
    case errc::tangential_intersection: return "TangentialIntersection";
    case errc::clearance_violation: return "ClearanceViolation";
    case errc::paths_intersect: return "PathsIntersect";
    case errc::disconnected_graph: return "DisconnectedGraph";
    case errc::degenerate_basis: return "DegenerateBasis";
    case errc::ill_conditioned: return "IllConditioned";
    case errc::non_integral_coordinates: return "NonIntegralCoordinates";
    case errc::decomposition_violation: return "DecompositionViolation";
    case errc::diameter_violation: return "DiameterViolation";
    case errc::audit_failed: return "AuditFailed";
    case errc::no_stabilization: return "NoStabilization";
    case errc::zero_on_contour: return "ZeroOnContour";
    case errc::refinement_overflow: return "RefinementOverflow";
    case errc::degenerate_set: return "DegenerateSet";
    case errc::config_violation: return "ConfigViolation";
    case errc::r_too_small: return "RTooSmall";
    case errc::coincident_points: return "CoincidentPoints";
    case errc::bad_argument: return "BadArgument";
    case errc::internal_error: return "InternalError";
  }
  return "Unknown";
}

poly2 poly2::from_terms(
    const std::vector<std::tuple<int, int, complex>>& terms) {
  int d = 0;
  for (const auto& [i, j, v] : terms)
    if (std::abs(v) > 0.0) d = std::max(d, i + j);
  poly2 p(d);
  for (const auto& [i, j, v] : terms) {
    if (i < 0 || j < 0) fail(errc::bad_argument, "negative exponent");
    if (std::abs(v) > 0.0) p.c_[i][j] += v;
  }
  return p;
}

void poly2::set_coeff(int i, int j, complex v) {
  if (i < 0 || j < 0 || i + j > deg_)
    fail(errc::bad_argument, "coefficient index outside degree bound");
  c_[i][j] = v;
}

complex poly2::eval(complex x, complex y) const {
  // Horner in x of Horner-in-y rows.
  complex acc(0);
  for (int i = deg_; i >= 0; --i) {
    complex row(0);
    for (int j = deg_ - i; j >= 0; --j) row = row * y + c_[i][j];
    acc = acc * x + row;
  }
  return acc;
}

poly2 poly2::dx() const {
  poly2 r(std::max(0, deg_ - 1));
  for (int i = 1; i <= deg_; ++i)
    for (int j = 0; i + j <= deg_; ++j)
      r.c_[i - 1][j] = c_[i][j] * double(i);
  return r;
}

poly2 poly2::dy() const {
  poly2 r(std::max(0, deg_ - 1));
  for (int i = 0; i <= deg_; ++i)
    for (int j = 1; i + j <= deg_; ++j)
      r.c_[i][j - 1] = c_[i][j] * double(j);
  return r;
}

poly2 poly2::higher_form() const {
  poly2 r(deg_);
  for (int i = 0; i <= deg_; ++i) r.c_[i][deg_ - i] = c_[i][deg_ - i];
  return r;
}

std::vector<complex> poly2::restrict_x(complex x0) const {
  std::vector<complex> out(deg_ + 1, complex(0));
  for (int j = 0; j <= deg_; ++j) {
    complex acc(0);
    for (int i = deg_ - j; i >= 0; --i) acc = acc * x0 + c_[i][j];
    out[j] = acc;
  }
  return out;
}

std::vector<complex> poly2::restrict_y(complex y0) const {
  std::vector<complex> out(deg_ + 1, complex(0));
  for (int i = 0; i <= deg_; ++i) {
    complex acc(0);
    for (int j = deg_ - i; j >= 0; --j) acc = acc * y0 + c_[i][j];
    out[i] = acc;
  }
  return out;
}

poly2 poly2::compose_affine(complex s, complex u, complex v) const {
  // Expand H(sx+u, sy+v) by iterated binomial substitution.
  // pow tables for (sx+u)^i and (sy+v)^j as univariate coefficient lists.
  auto pow_table = [&](complex a, complex b, int dmax) {
    // (a*z + b)^k for k=0..dmax, coefficients in z, low order first.
    std::vector<std::vector<complex>> t(dmax + 1);
    t[0] = {complex(1)};
    for (int k = 1; k <= dmax; ++k) {
      t[k].assign(k + 1, complex(0));
      for (int m = 0; m < k; ++m) {
        t[k][m] += t[k - 1][m] * b;
        t[k][m + 1] += t[k - 1][m] * a;
      }
    }
    return t;
  };
  auto px = pow_table(s, u, deg_);
  auto py = pow_table(s, v, deg_);
  poly2 r(deg_);
  for (int i = 0; i <= deg_; ++i)
    for (int j = 0; i + j <= deg_; ++j) {
      if (c_[i][j] == complex(0)) continue;
      for (int a = 0; a <= i; ++a)
        for (int b = 0; b <= j; ++b)
          r.c_[a][b] += c_[i][j] * px[i][a] * py[j][b];
    }
  return r;
}

poly2 poly2::operator*(complex a) const {
  poly2 r = *this;
  for (auto& row : r.c_)
    for (auto& v : row) v *= a;
  return r;
}

poly2 poly2::operator+(const poly2& o) const {
  poly2 r(std::max(deg_, o.deg_));
  for (int i = 0; i <= r.deg_; ++i)
    for (int j = 0; i + j <= r.deg_; ++j)
      r.c_[i][j] = coeff(i, j) + o.coeff(i, j);
  return r;
}

poly2 poly2::operator-(const poly2& o) const { return *this + (o * complex(-1)); }

void poly2::add_constant(complex b) { c_[0][0] += b; }

bool poly2::is_zero(double tol) const { return max_abs_coeff() <= tol; }

bool poly2::is_real(double tol) const {
  double m = max_abs_coeff();
  for (const auto& row : c_)
    for (const auto& v : row)
      if (std::abs(v.imag()) > tol * std::max(1.0, m)) return false;
  return true;
}

double poly2::max_abs_coeff() const {
  double m = 0;
  for (const auto& row : c_)
    for (const auto& v : row) m = std::max(m, std::abs(v));
  return m;
}

int poly2::effective_degree(double rel_tol) const {
  double m = max_abs_coeff();
  if (m == 0) return 0;
  for (int d = deg_; d >= 1; --d) {
    for (int i = 0; i <= d; ++i)
      if (std::abs(coeff(i, d - i)) > rel_tol * m) return d;
  }
  return 0;
}

complex poly_eval(const std::vector<complex>& coeffs, complex z) {
  complex acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<complex> poly_derive(const std::vector<complex>& coeffs) {
  if (coeffs.size() <= 1) return {complex(0)};
  std::vector<complex> d(coeffs.size() - 1);
  for (size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = coeffs[k] * double(k);
  return d;
}

std::vector<complex> poly_roots(const std::vector<complex>& coeffs,
                                double rel_strip) {
  double m = 0;
  for (auto& c : coeffs) m = std::max(m, std::abs(c));
  if (m == 0) fail(errc::zero_polynomial, "root finding on zero polynomial");
  int hi = int(coeffs.size()) - 1;
  while (hi > 0 && std::abs(coeffs[hi]) <= rel_strip * m) --hi;
  if (hi == 0) return {};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(hi, hi);
  for (int k = 0; k < hi; ++k) C(k, hi - 1) = -coeffs[k] / coeffs[hi];
  for (int k = 1; k < hi; ++k) C(k, k - 1) = complex(1);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<complex> roots(hi);
  auto d = poly_derive(coeffs);
  for (int k = 0; k < hi; ++k) {
    complex z = es.eigenvalues()(k);
    for (int it = 0; it < 8; ++it) {  // Newton polish; stalls near multiples
      complex f = poly_eval(coeffs, z), df = poly_eval(d, z);
      if (std::abs(df) < 1e-300) break;
      complex step = f / df;
      z -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    roots[k] = z;
  }
  std::sort(roots.begin(), roots.end(), [](complex a, complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

namespace {

// Sylvester resultant of p, q in y with coefficients polynomial in x,
// computed by evaluation at scaled roots of unity and inverse DFT.
// Degrees in y are the global y-degrees of the bivariate inputs.
int ydeg(const poly2& p, double rel = 1e-13) {
  double m = p.max_abs_coeff();
  if (m == 0) return -1;
  for (int j = p.degree(); j >= 0; --j)
    for (int i = 0; i + j <= p.degree(); ++i)
      if (std::abs(p.coeff(i, j)) > rel * m) return j;
  return -1;
}

int xdeg(const poly2& p, double rel = 1e-13) {
  double m = p.max_abs_coeff();
  if (m == 0) return -1;
  for (int i = p.degree(); i >= 0; --i)
    for (int j = 0; i + j <= p.degree(); ++j)
      if (std::abs(p.coeff(i, j)) > rel * m) return i;
  return -1;
}

complex sylvester_det_at(const poly2& p, const poly2& q, int dp, int dq,
                         complex x) {
  std::vector<complex> a(dp + 1), b(dq + 1);
  {
    auto full = p.restrict_x(x);
    for (int j = 0; j <= dp; ++j) a[j] = j < int(full.size()) ? full[j] : complex(0);
    full = q.restrict_x(x);
    for (int j = 0; j <= dq; ++j) b[j] = j < int(full.size()) ? full[j] : complex(0);
  }
  int n = dp + dq;
  if (n == 0) return complex(1);
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) S(r, r + k) = a[dp - k];
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) S(dq + r, r + k) = b[dq - k];
  return S.determinant();
}

// Sylvester resultant of two univariate polynomials (low order first).
complex uni_resultant(const std::vector<complex>& p,
                      const std::vector<complex>& q) {
  int dp = int(p.size()) - 1, dq = int(q.size()) - 1;
  while (dp > 0 && p[dp] == complex(0)) --dp;
  while (dq > 0 && q[dq] == complex(0)) --dq;
  int n = dp + dq;
  if (n == 0) return complex(1);
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) S(r, r + k) = p[dp - k];
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) S(dq + r, r + k) = q[dq - k];
  return S.determinant();
}

}  // namespace

std::vector<critical_point> critical_points(const poly2& H, const config& cfg,
                                            bool* deficient) {
  if (H.degree() < 2) fail(errc::degree_too_low, "degree below 2");
  poly2 hx = H.dx(), hy = H.dy();
  double scale = std::max(hx.max_abs_coeff(), hy.max_abs_coeff());
  if (scale == 0)
    fail(errc::non_isolated_critical_locus, "gradient identically zero");
  if (hx.is_zero(1e-14 * scale) || hy.is_zero(1e-14 * scale))
    fail(errc::non_isolated_critical_locus,
         "one gradient component identically zero");

  int n = H.degree() - 1;
  int dpy = ydeg(hx), dqy = ydeg(hy);

  std::vector<complex> xs;  // candidate x coordinates
  if (dpy < 0 || dqy < 0)
    fail(errc::internal_error, "unexpected zero gradient component");

  // Resultant in y as a polynomial in x, by evaluation-interpolation.
  int dres = std::max(1, ydeg(hx) * std::max(0, xdeg(hy)) +
                             ydeg(hy) * std::max(0, xdeg(hx)));
  int N = dres + 1;
  double r0 = 1.37;  // sampling circle; avoids symmetry-aligned nodes
  std::vector<complex> vals(N);
  double vmax = 0;
  for (int k = 0; k < N; ++k) {
    complex xk = std::polar(r0, 2 * M_PI * (k + 0.37) / N);
    vals[k] = sylvester_det_at(hx, hy, dpy, dqy, xk);
    vmax = std::max(vmax, std::abs(vals[k]));
  }
  int sylsize = dpy + dqy;
  double entry_scale = std::max(hx.max_abs_coeff(), hy.max_abs_coeff());
  double det_scale = std::pow(std::max(1.0, entry_scale * std::pow(1 + r0, H.degree())),
                              std::max(1, sylsize));
  if (vmax <= 1e-12 * det_scale)
    fail(errc::non_isolated_critical_locus, "resultant vanishes identically");

  // Inverse DFT on the shifted nodes: coefficients of Res(x).
  std::vector<complex> res(N, complex(0));
  for (int m = 0; m < N; ++m) {
    complex acc(0);
    for (int k = 0; k < N; ++k) {
      double ang = -2 * M_PI * (k + 0.37) * m / N;
      acc += vals[k] * std::polar(1.0, ang);
    }
    res[m] = acc / (double(N) * std::pow(r0, m));
  }
  xs = poly_roots(res, 1e-10);

  // Back substitution: for each candidate x, y candidates come from either
  // gradient component restricted to that x.
  poly2 hxx = hx.dx(), hxy = hx.dy(), hyy = hy.dy();
  std::vector<critical_point> pts;
  double mag = 0;
  for (complex x0 : xs) mag = std::max(mag, std::abs(x0));
  for (complex x0 : xs) {
    std::vector<complex> ys;
    for (const poly2* g : {&hx, &hy}) {
      auto cs = g->restrict_x(x0);
      double cm = 0;
      for (auto& c : cs) cm = std::max(cm, std::abs(c));
      if (cm <= 1e-12 * scale) continue;  // component vanishes along this x
      auto r = poly_roots(cs, 1e-9);
      ys.insert(ys.end(), r.begin(), r.end());
    }
    for (complex y0 : ys) {
      // Newton on the gradient system, Jacobian = Hessian of H.
      complex x = x0, y = y0;
      bool ok = false;
      for (int it = 0; it < 40; ++it) {
        complex fx = hx.eval(x, y), fy = hy.eval(x, y);
        double res2 = std::abs(fx) + std::abs(fy);
        if (res2 < cfg.tol.gradient * std::max(1.0, scale)) {
          ok = true;
          break;
        }
        complex a = hxx.eval(x, y), b = hxy.eval(x, y), d = hyy.eval(x, y);
        complex det = a * d - b * b;
        if (std::abs(det) < 1e-250) break;
        complex dx0 = (fx * d - b * fy) / det;
        complex dy0 = (a * fy - fx * b) / det;
        x -= dx0;
        y -= dy0;
        if (std::abs(dx0) + std::abs(dy0) > 1e6) break;  // escaping
      }
      if (!ok) {
        // Degenerate points have a singular Hessian; fall back to damped
        // least-squares steps, which converge linearly there.
        x = x0;
        y = y0;
        for (int it = 0; it < 200; ++it) {
          complex fx = hx.eval(x, y), fy = hy.eval(x, y);
          if (std::abs(fx) + std::abs(fy) <
              cfg.tol.gradient * std::max(1.0, scale))
            ok = true;  // converged, but keep sharpening so that scattered
                        // copies of one degenerate point collapse together
          Eigen::Matrix2cd J;
          J << hxx.eval(x, y), hxy.eval(x, y), hxy.eval(x, y), hyy.eval(x, y);
          Eigen::Vector2cd f;
          f << fx, fy;
          Eigen::Vector2cd st =
              J.completeOrthogonalDecomposition().solve(f);
          if (!st.allFinite()) break;
          double cap = 0.5 * (1.0 + std::abs(x) + std::abs(y));
          double sn = st.norm();
          if (sn > cap) st *= cap / sn;
          x -= st(0);
          y -= st(1);
          if (sn < 1e-15 * (1.0 + std::abs(x) + std::abs(y))) break;
        }
        {
          complex fx = hx.eval(x, y), fy = hy.eval(x, y);
          if (std::abs(fx) + std::abs(fy) <
              cfg.tol.gradient * std::max(1.0, scale))
            ok = true;
        }
      }
      if (!ok) continue;
      bool dup = false;
      for (const auto& p : pts)
        if (std::abs(p.x - x) + std::abs(p.y - y) <
            1e-6 * std::max(1.0, mag)) {
          dup = true;
          break;
        }
      if (dup) continue;
      critical_point cp;
      cp.x = x;
      cp.y = y;
      cp.value = H.eval(x, y);
      complex a = hxx.eval(x, y), b = hxy.eval(x, y), d = hyy.eval(x, y);
      cp.hessian_det = a * d - b * b;
      cp.morse = std::abs(cp.hessian_det) > cfg.tol.hessian;
      pts.push_back(cp);
    }
  }
  std::sort(pts.begin(), pts.end(), [](const critical_point& a,
                                       const critical_point& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
    if (a.x.real() != b.x.real()) return a.x.real() < b.x.real();
    return a.y.real() < b.y.real();
  });
  if (deficient) *deficient = int(pts.size()) < n * n;
  return pts;
}

ultra_morse_report is_ultra_morse(const poly2& H, const config& cfg) {
  if (H.degree() < 3) fail(errc::degree_too_low, "ultra-Morse needs degree >= 3");
  ultra_morse_report rep;
  bool deficient = false;
  rep.points = critical_points(H, cfg, &deficient);
  rep.deficient = deficient;
  int n = H.degree() - 1;
  if (deficient || int(rep.points.size()) != n * n) {
    rep.morse_fail = true;
    rep.diagnosis += "expected " + std::to_string(n * n) +
                     " Morse critical points, found " +
                     std::to_string(rep.points.size()) + "; ";
  }
  for (const auto& p : rep.points)
    if (!p.morse) {
      rep.morse_fail = true;
      rep.diagnosis += "degenerate critical point; ";
      break;
    }
  for (size_t i = 0; i < rep.points.size(); ++i)
    for (size_t j = i + 1; j < rep.points.size(); ++j)
      if (std::abs(rep.points[i].value - rep.points[j].value) <
          cfg.tol.value_coincidence) {
        rep.value_coincidence = true;
      }
  if (rep.value_coincidence) rep.diagnosis += "coincident critical values; ";

  // Roots of the top form on the projective line, Fubini-Study separation.
  poly2 h = H.higher_form();
  if (h.is_zero(1e-14 * std::max(1.0, H.max_abs_coeff())))
    fail(errc::zero_polynomial, "vanishing top homogeneous form");
  // Square-freeness test on h(x, 1), structural rather than root-based:
  // roots of a multiple factor scatter like eps^(1/multiplicity) and can
  // escape any proximity threshold, while disc = Res(p, p') stays robust.
  auto cs = h.restrict_y(complex(1));  // h(x, 1), low order first in x
  double cm = 0;
  for (auto& c : cs) cm = std::max(cm, std::abs(c));
  int d = H.degree();
  int effective = int(cs.size()) - 1;
  while (effective > 0 && std::abs(cs[effective]) <= 1e-12 * cm) --effective;
  if (d - effective >= 2)
    rep.root_coincidence = true;  // multiple root on the line at infinity
  if (effective >= 2) {
    std::vector<complex> p(cs.begin(), cs.begin() + effective + 1);
    for (auto& c : p) c /= cm;  // unit max coefficient
    complex disc = uni_resultant(p, poly_derive(p));
    if (std::abs(disc) < 1e-10) rep.root_coincidence = true;
  }
  if (rep.root_coincidence) rep.diagnosis += "coincident roots of top form; ";

  rep.ultra_morse =
      !rep.morse_fail && !rep.value_coincidence && !rep.root_coincidence;
  return rep;
}

}  // namespace abelint
