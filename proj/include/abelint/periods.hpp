#ifndef ABELINT_PERIODS_HPP
#define ABELINT_PERIODS_HPP

#include <Eigen/Dense>
#include <vector>

#include "abelint/monodromy.hpp"

namespace abelint {

// The standard form set for degree n+1: mu = n^2 forms y x^k y^l dx with
// 0 <= k, l <= n-1, enumerated by increasing k+l with x-heavy forms first
// inside one total degree. The square contains every pair with k+l <= n-1
// and stays within k+l <= 2n-2, and it keeps the period matrix away from
// the degeneracies that pure total-degree fills hit on split polynomials
// f(x) + g(y).
std::vector<one_form> standard_forms(int n);

// Period matrix over an explicit cycle list: entry (i, j) is the integral
// of forms[i] over cycles[j].
Eigen::MatrixXcd period_matrix_raw(const poly2& H,
                                   const std::vector<cycle>& cycles,
                                   const std::vector<one_form>& forms,
                                   const config& cfg);

// Period matrix of a marked system at the end of a path from t0: transports
// every delta along `history` and integrates the standard forms.
struct period_matrix_result {
  Eigen::MatrixXcd entries;  // rows = forms, columns = cycles
  std::vector<one_form> forms;
  path history;  // from t0; single-point path = base fiber
  complex at;    // history end
  complex det;
};

period_matrix_result period_matrix(const marked_system& sys,
                                   const path& history, const config& cfg);

// Single-valuedness of the determinant of periods: continues the whole
// basis along each loop and compares det after return against det at t0.
struct det_monodromy_report {
  complex base_det;
  std::vector<double> residuals;  // relative, one per loop
  bool pass = false;              // all residuals <= tol.det_monodromy
};

det_monodromy_report determinant_monodromy_check(
    const marked_system& sys, const std::vector<path>& loops,
    const config& cfg);

// Least-squares polynomial fit of det(t) at sample points, degree raised
// until the relative residual drops below tol.fit_residual. Reports the
// stabilized degree. Throws no_stabilization when the budget (degree
// max_degree) is exhausted, clearance_violation when a sample path would
// pass closer than nu/2 to a critical value.
struct det_polynomiality_report {
  int degree = -1;
  double residual = 0;
  std::vector<complex> coefficients;  // low order first
  std::vector<complex> samples;       // t values used
  std::vector<complex> dets;          // det at each sample
};

det_polynomiality_report determinant_polynomiality_check(
    const marked_system& sys, const std::vector<complex>& sample_ts,
    const config& cfg, int max_degree = 24);

// Lower bound for |det| on the nu-clear part of the disk |t| <= 3, in log
// space: ln delta0 = 6 n^3 ln c' + n^2 ln c'' - 62 n^3 ln n.
double delta0_bound(const gap_report& gaps);

}  // namespace abelint

#endif
