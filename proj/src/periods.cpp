#include "abelint/periods.hpp"

#include <algorithm>
#include <cmath>

#include "abelint/bounds.hpp"

namespace abelint {

std::vector<one_form> standard_forms(int n) {
  if (n < 2) fail(errc::bad_argument, "standard form set needs degree >= 3");
  int mu = n * n;
  std::vector<one_form> out;
  out.reserve(mu);
  // All pairs with 0 <= k, l <= n-1, which is exactly mu of them, contains
  // every pair with k+l <= n-1, and stays within k+l <= 2n-2. The square
  // matters: staircase fills by total degree alone pick up forms like
  // x^{n} y dx whose periods collapse onto lower ones whenever H splits as
  // f(x) + g(y), and the period matrix degenerates. Enumeration is by
  // increasing total degree, x-heavy forms first within one degree.
  for (int s = 0; s <= 2 * (n - 1); ++s)
    for (int k = std::min(s, n - 1); k >= 0 && k >= s - (n - 1); --k)
      out.push_back(monomial_form(k, s - k));
  if (int(out.size()) != mu)
    fail(errc::internal_error, "standard form enumeration fell short");
  return out;
}

Eigen::MatrixXcd period_matrix_raw(const poly2& H,
                                   const std::vector<cycle>& cycles,
                                   const std::vector<one_form>& forms,
                                   const config& cfg) {
  Eigen::MatrixXcd P(forms.size(), cycles.size());
  for (size_t i = 0; i < forms.size(); ++i)
    for (size_t j = 0; j < cycles.size(); ++j)
      P(i, j) =
          integrate_form(H, cycles[j], forms[i], cfg, cfg.tol.quadrature);
  return P;
}

period_matrix_result period_matrix(const marked_system& sys,
                                   const path& history, const config& cfg) {
  period_matrix_result r;
  r.forms = sys.forms;
  path h = history;
  if (h.v.empty()) h.v.push_back(sys.t0);
  if (std::abs(h.start() - sys.t0) > 1e-9)
    fail(errc::bad_argument, "period matrix path must start at the base point");
  for (complex a : sys.values)
    if (h.distance_to(a) < 1e-9)
      fail(errc::clearance_violation,
           "period matrix path passes through a critical value");
  r.history = h;
  r.at = h.end();
  if (h.v.size() > 1 && h.length() > 0) {
    std::vector<cycle> moved;
    moved.reserve(sys.deltas.size());
    for (const cycle& d : sys.deltas)
      moved.push_back(transport_cycle(sys.H, d, h, cfg));
    r.entries = period_matrix_raw(sys.H, moved, sys.forms, cfg);
  } else {
    r.entries = sys.period;
  }
  r.det = r.entries.determinant();
  return r;
}

det_monodromy_report determinant_monodromy_check(const marked_system& sys,
                                                 const std::vector<path>& loops,
                                                 const config& cfg) {
  det_monodromy_report rep;
  rep.base_det = sys.period.determinant();
  rep.pass = true;
  for (const path& lp : loops) {
    if (lp.v.size() < 2 || lp.length() == 0) {
      rep.residuals.push_back(0.0);  // identity loop
      continue;
    }
    if (std::abs(lp.start() - sys.t0) > 1e-9 ||
        std::abs(lp.end() - sys.t0) > 1e-9)
      fail(errc::bad_argument, "loop must start and end at the base point");
    auto pm = period_matrix(sys, lp, cfg);
    double res = std::abs(pm.det - rep.base_det) /
                 std::max(std::abs(rep.base_det), 1e-300);
    rep.residuals.push_back(res);
    if (res > cfg.tol.det_monodromy) rep.pass = false;
  }
  return rep;
}

det_polynomiality_report determinant_polynomiality_check(
    const marked_system& sys, const std::vector<complex>& sample_ts,
    const config& cfg, int max_degree) {
  if (sample_ts.empty()) fail(errc::bad_argument, "no sample points");
  det_polynomiality_report rep;

  // Walk the station list, carrying the whole basis along straight legs.
  std::vector<cycle> cur = sys.deltas;
  complex at = sys.t0;
  bool have_det = false;
  complex last_det = 0;
  for (complex s : sample_ts) {
    double hop = std::abs(s - at);
    if (hop > 1e-12) {
      path leg = segment_path(at, s, std::max(1, int(std::ceil(hop / 0.25))));
      for (complex a : sys.values)
        if (leg.distance_to(a) < sys.nu / 2)
          fail(errc::clearance_violation,
               "sample leg passes a critical value closer than nu/2");
      for (auto& d : cur) d = transport_cycle(sys.H, d, leg, cfg);
      at = s;
      have_det = false;
    }
    if (!have_det) {
      last_det = period_matrix_raw(sys.H, cur, sys.forms, cfg).determinant();
      have_det = true;
    }
    rep.samples.push_back(s);
    rep.dets.push_back(last_det);
  }

  // Least-squares fit in the rescaled variable, degree raised until the
  // relative residual stabilizes below tolerance.
  int N = int(rep.samples.size());
  double scale = 0;
  for (complex s : rep.samples) scale = std::max(scale, std::abs(s));
  if (scale == 0) scale = 1;
  Eigen::VectorXcd rhs(N);
  for (int i = 0; i < N; ++i) rhs(i) = rep.dets[i];
  double rhs_norm = std::max(rhs.norm(), 1e-300);
  for (int d = 0; d <= max_degree && d + 2 <= N; ++d) {
    Eigen::MatrixXcd V(N, d + 1);
    for (int i = 0; i < N; ++i) {
      complex tau = rep.samples[i] / scale;
      complex p = 1;
      for (int k = 0; k <= d; ++k) {
        V(i, k) = p;
        p *= tau;
      }
    }
    Eigen::VectorXcd c = V.colPivHouseholderQr().solve(rhs);
    double resid = (V * c - rhs).norm() / rhs_norm;
    if (resid <= cfg.tol.fit_residual) {
      rep.degree = d;
      rep.residual = resid;
      rep.coefficients.resize(d + 1);
      double sk = 1;
      for (int k = 0; k <= d; ++k) {
        rep.coefficients[k] = c(k) / sk;
        sk *= scale;
      }
      return rep;
    }
  }
  fail(errc::no_stabilization,
       "determinant fit did not stabilize within the degree budget");
}

double delta0_bound(const gap_report& gaps) {
  return log_delta0(gaps.n, gaps.c_prime, gaps.c_dprime);
}

}  // namespace abelint
