#ifndef ABELINT_BOUNDS_HPP
#define ABELINT_BOUNDS_HPP

#include <map>
#include <string>

#include "abelint/types.hpp"

namespace abelint {

// Every evaluator returns the natural log of the bound. Inputs n >= 2,
// c', c'' in (0, 1]. No evaluator may overflow for n <= 10, c'' >= 1e-6.

// (1 - ln c') * e^(c_appendix n^4 / c''), c_appendix in {5000, 5}.
double headline_bound(int n, double cp, double cpp, int c_appendix = 5000);
// Real-domain count on sigma(t0, nu): (1 - ln c') * A^578.
double sigma_bound(int n, double cp, double cpp);
// Complex count in the union of D_nu(a_j): (1 - ln c') * A^4800.
double disk_union_bound(int n, double cp, double cpp);
// Zeros in D_R for R > 288 n^4/c'': (1-ln c')(e^{7R} + A^4800 e^{481 l/c''}).
double large_disk_bound(int n, double cp, double cpp, double R, double l);
// e^{7R} branch alone, valid for R >= 288 n^4/c''.
double growth_term_bound(int n, double cp, double cpp, double R);
// l-fold sector count: (1 - ln c') e^{4700 n^4/c'' + 481 l/c''}.
double sector_bound(int n, double cp, double cpp, double l);

struct main_lemma_report {
  double eq_1_8;    // ln[(1 - ln c') A^2]
  double bukpol;    // ln[2700 n^18 / c'' - 30 n^6 ln c']
  bool dominated;   // bukpol < eq_1_8
};
main_lemma_report main_lemma_bounds(int n, double cp, double cpp);

// Period bounds (natural logs). alpha_len, alphat_len are path lengths,
// beta a clearance radius, V a variation budget, t_abs = |t'|.
double log_M0(int n, double cp, double cpp);
double log_M1(int n, double cp, double alpha_len, double beta);
double log_M2(int n, double cp, double alphat_len, double V, double beta,
              double t_abs);
// Prefactored integral bounds carry an extra 2^{-2n}.
double log_M1_integral(int n, double cp, double alpha_len, double beta);
double log_M2_integral(int n, double cp, double alphat_len, double V,
                       double beta, double t_abs);

// Determinant floor: ln Delta_0 = 6n^3 ln c' + n^2 ln c'' - 62 n^3 ln n.
double log_delta0(int n, double cp, double cpp);

// Fewnomial-style ceiling: ln R0 = -14 n^3 ln c' + 65 n^3 ln n.
double log_R0(int n, double cp);

// Pointwise Poincare-slope lower bounds (plain values, not logs).
double poincare_lb_ab(complex t, complex a, complex b);
double poincare_lb_b(complex t, complex a, int n, double cpp);

double mardesic_multiplicity(int n);  // n^4, plain value

// Named natural-log entries for reporting.
struct bounds_params {
  int n = 2;
  double c_prime = 1.0, c_dprime = 1.0;
  int c_appendix = 5000;
  double R = -1;          // default: 288 n^4/c'' + 1
  double l = 1;
  double alpha_len = 9;
  double alphat_len = 19;
  double beta = -1;       // default: nu = c''/(4 n^2)
  double V = 1;
  double t_abs = 5;
};

std::map<std::string, double> bounds_report(const bounds_params& p);

}  // namespace abelint

#endif
