#ifndef ABELINT_POLY2_HPP
#define ABELINT_POLY2_HPP

#include <tuple>
#include <vector>

#include "abelint/types.hpp"

namespace abelint {

// Bivariate polynomial with complex coefficients, dense storage.
// coeff(i, j) multiplies x^i y^j. The top homogeneous form of an input
// polynomial of degree n+1 is expected to be nonzero; analysis entry points
// additionally require degree >= 3 (tracing helpers accept degree 2).
class poly2 {
public:
  poly2() : deg_(0), c_(1, std::vector<complex>(1, complex(0))) {}
  explicit poly2(int degree)
      : deg_(degree),
        c_(degree + 1, std::vector<complex>(degree + 1, complex(0))) {}

  static poly2 from_terms(
      const std::vector<std::tuple<int, int, complex>>& terms);

  int degree() const { return deg_; }
  complex coeff(int i, int j) const {
    if (i < 0 || j < 0 || i > deg_ || j > deg_ || i + j > deg_)
      return complex(0);
    return c_[i][j];
  }
  void set_coeff(int i, int j, complex v);

  complex eval(complex x, complex y) const;
  poly2 dx() const;
  poly2 dy() const;

  // Top homogeneous form, as a polynomial of the same nominal degree.
  poly2 higher_form() const;

  // Univariate restrictions: coefficients of y^j in H(x0, y), resp. x^i in
  // H(x, y0), low order first.
  std::vector<complex> restrict_x(complex x0) const;
  std::vector<complex> restrict_y(complex y0) const;

  // H(sx + u, sy + v)
  poly2 compose_affine(complex s, complex u, complex v) const;

  poly2 operator*(complex a) const;
  poly2 operator+(const poly2& o) const;
  poly2 operator-(const poly2& o) const;
  void add_constant(complex b);

  bool is_zero(double tol = 0.0) const;
  bool is_real(double tol = 1e-12) const;
  double max_abs_coeff() const;
  // Degree of the largest nonzero homogeneous part (relative threshold).
  int effective_degree(double rel_tol = 1e-12) const;

private:
  int deg_;
  std::vector<std::vector<complex>> c_;
};

struct critical_point {
  complex x, y;
  complex value;
  complex hessian_det;
  bool morse = false;
};

// Roots of a univariate polynomial (low order first) via the companion
// matrix, Newton polished. Leading coefficients below rel_strip of the max
// are stripped.
std::vector<complex> poly_roots(const std::vector<complex>& coeffs,
                                double rel_strip = 1e-12);

complex poly_eval(const std::vector<complex>& coeffs, complex z);
std::vector<complex> poly_derive(const std::vector<complex>& coeffs);

// All isolated solutions of grad H = 0 by resultant elimination in y,
// companion matrix roots in x, back substitution and Newton polishing.
// Throws non_isolated_critical_locus when the critical set has positive
// dimension. deficient is set when fewer than (deg-1)^2 points are found.
std::vector<critical_point> critical_points(const poly2& H, const config& cfg,
                                            bool* deficient = nullptr);

struct ultra_morse_report {
  bool ultra_morse = false;
  bool morse_fail = false;           // some point degenerate or wrong count
  bool value_coincidence = false;    // two critical values too close
  bool root_coincidence = false;     // two roots of the top form too close
  bool deficient = false;
  std::vector<critical_point> points;
  std::string diagnosis;
};

ultra_morse_report is_ultra_morse(const poly2& H, const config& cfg);

}  // namespace abelint

#endif
