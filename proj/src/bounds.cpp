#include "abelint/bounds.hpp"

#include <cmath>

namespace abelint {

namespace {

void check_inputs(int n, double cp, double cpp) {
  if (n < 2) fail(errc::bad_argument, "n must be at least 2");
  if (!(cp > 0 && cp <= 1) || !(cpp > 0 && cpp <= 1))
    fail(errc::bad_argument, "gap values must lie in (0, 1]");
}

double pre(double cp) { return std::log(1.0 - std::log(cp)); }

double pow_i(int n, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r *= n;
  return r;
}

// ln(e^x + e^y) without overflow.
double logsumexp(double x, double y) {
  double m = std::max(x, y);
  return m + std::log1p(std::exp(-std::abs(x - y)));
}

}  // namespace

double headline_bound(int n, double cp, double cpp, int c_appendix) {
  check_inputs(n, cp, cpp);
  if (c_appendix != 5000 && c_appendix != 5)
    fail(errc::bad_argument, "appendix constant must be 5000 or 5");
  return pre(cp) + double(c_appendix) * pow_i(n, 4) / cpp;
}

double sigma_bound(int n, double cp, double cpp) {
  check_inputs(n, cp, cpp);
  return pre(cp) + 578.0 * pow_i(n, 4) / cpp;
}

double disk_union_bound(int n, double cp, double cpp) {
  check_inputs(n, cp, cpp);
  return pre(cp) + 4800.0 * pow_i(n, 4) / cpp;
}

double large_disk_bound(int n, double cp, double cpp, double R, double l) {
  check_inputs(n, cp, cpp);
  if (!(R > 288.0 * pow_i(n, 4) / cpp))
    fail(errc::r_too_small, "R must exceed 288 n^4 / c''");
  return pre(cp) + logsumexp(7.0 * R, 4800.0 * pow_i(n, 4) / cpp + 481.0 * l / cpp);
}

double growth_term_bound(int n, double cp, double cpp, double R) {
  check_inputs(n, cp, cpp);
  if (!(R >= 288.0 * pow_i(n, 4) / cpp))
    fail(errc::r_too_small, "R must be at least 288 n^4 / c''");
  return pre(cp) + 7.0 * R;
}

double sector_bound(int n, double cp, double cpp, double l) {
  check_inputs(n, cp, cpp);
  return pre(cp) + 4700.0 * pow_i(n, 4) / cpp + 481.0 * l / cpp;
}

main_lemma_report main_lemma_bounds(int n, double cp, double cpp) {
  check_inputs(n, cp, cpp);
  main_lemma_report rep;
  rep.eq_1_8 = pre(cp) + 2.0 * pow_i(n, 4) / cpp;
  rep.bukpol = std::log(2700.0 * pow_i(n, 18) / cpp - 30.0 * pow_i(n, 6) * std::log(cp));
  rep.dominated = rep.bukpol < rep.eq_1_8;
  return rep;
}

double log_M0(int n, double cp, double cpp) {
  check_inputs(n, cp, cpp);
  return (2600.0 * pow_i(n, 16) / cpp) * std::log(2.0) -
         28.0 * pow_i(n, 4) * std::log(cp);
}

double log_M1(int n, double cp, double alpha_len, double beta) {
  if (beta <= 0) fail(errc::bad_argument, "beta must be positive");
  return 10.0 * pow_i(n, 12) * ((alpha_len + 5.0) / beta) * std::log(2.0) -
         28.0 * pow_i(n, 4) * std::log(cp);
}

double log_M2(int n, double cp, double alphat_len, double V, double beta,
              double t_abs) {
  if (beta <= 0) fail(errc::bad_argument, "beta must be positive");
  double tail = std::log(std::max(1.0, (t_abs / 5.0) * (t_abs / 5.0)));
  return 20.0 * pow_i(n, 12) * ((alphat_len + V + 5.0) / beta) * std::log(2.0) -
         28.0 * pow_i(n, 4) * std::log(cp) + tail;
}

double log_M1_integral(int n, double cp, double alpha_len, double beta) {
  return log_M1(n, cp, alpha_len, beta) - 2.0 * n * std::log(2.0);
}

double log_M2_integral(int n, double cp, double alphat_len, double V,
                       double beta, double t_abs) {
  return log_M2(n, cp, alphat_len, V, beta, t_abs) - 2.0 * n * std::log(2.0);
}

double log_delta0(int n, double cp, double cpp) {
  check_inputs(n, cp, cpp);
  return 6.0 * pow_i(n, 3) * std::log(cp) + pow_i(n, 2) * std::log(cpp) -
         62.0 * pow_i(n, 3) * std::log(double(n));
}

double log_R0(int n, double cp) {
  if (n < 2) fail(errc::bad_argument, "n must be at least 2");
  if (!(cp > 0 && cp <= 1)) fail(errc::bad_argument, "c' must lie in (0, 1]");
  return -14.0 * pow_i(n, 3) * std::log(cp) + 65.0 * pow_i(n, 3) * std::log(double(n));
}

double poincare_lb_ab(complex t, complex a, complex b) {
  double da = std::abs(t - a), db = std::abs(t - b);
  double dmin = std::min(da, db);
  if (dmin <= 0) fail(errc::coincident_points, "t coincides with an endpoint");
  if (a == b) fail(errc::coincident_points, "endpoints coincide");
  double la = std::abs(std::log(std::abs((t - a) / (a - b))));
  double lb = std::abs(std::log(std::abs((t - b) / (a - b))));
  return 1.0 / (dmin * (std::min(la, lb) + 5.0));
}

double poincare_lb_b(complex t, complex a, int n, double cpp) {
  double d = std::abs(t - a);
  if (d <= 0) fail(errc::coincident_points, "t coincides with the endpoint");
  if (n < 2 || !(cpp > 0)) fail(errc::bad_argument, "bad parameters");
  double C = 2.0 * std::log(double(n)) - std::log(cpp) + 5.0;
  return 1.0 / (d * (std::abs(std::log(d)) + C));
}

double mardesic_multiplicity(int n) { return pow_i(n, 4); }

std::map<std::string, double> bounds_report(const bounds_params& p) {
  double nu = p.c_dprime / (4.0 * p.n * p.n);
  double R = p.R > 0 ? p.R : 288.0 * pow_i(p.n, 4) / p.c_dprime + 1.0;
  double beta = p.beta > 0 ? p.beta : nu;
  std::map<std::string, double> out;
  out["headline"] = headline_bound(p.n, p.c_prime, p.c_dprime, p.c_appendix);
  out["sigma"] = sigma_bound(p.n, p.c_prime, p.c_dprime);
  out["disk_union"] = disk_union_bound(p.n, p.c_prime, p.c_dprime);
  out["large_disk"] = large_disk_bound(p.n, p.c_prime, p.c_dprime, R, p.l);
  out["growth_term"] = growth_term_bound(p.n, p.c_prime, p.c_dprime, R);
  out["sector"] = sector_bound(p.n, p.c_prime, p.c_dprime, p.l);
  auto ml = main_lemma_bounds(p.n, p.c_prime, p.c_dprime);
  out["main_lemma"] = ml.eq_1_8;
  out["bukpol"] = ml.bukpol;
  out["M0"] = log_M0(p.n, p.c_prime, p.c_dprime);
  out["M1"] = log_M1(p.n, p.c_prime, p.alpha_len, beta);
  out["M1_integral"] = log_M1_integral(p.n, p.c_prime, p.alpha_len, beta);
  out["M2"] = log_M2(p.n, p.c_prime, p.alphat_len, p.V, beta, p.t_abs);
  out["M2_integral"] =
      log_M2_integral(p.n, p.c_prime, p.alphat_len, p.V, beta, p.t_abs);
  out["delta0"] = log_delta0(p.n, p.c_prime, p.c_dprime);
  out["R0"] = log_R0(p.n, p.c_prime);
  out["mardesic_multiplicity"] = std::log(mardesic_multiplicity(p.n));
  return out;
}

}  // namespace abelint
