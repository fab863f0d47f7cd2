#ifndef ABELINT_TYPES_HPP
#define ABELINT_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <cstdint>

namespace abelint {

using complex = std::complex<double>;

enum class errc : int {
  ok = 0,
  parse_error,
  zero_polynomial,
  degree_too_low,
  non_isolated_critical_locus,
  not_enough_critical_values,
  not_ultra_morse,
  singular_encounter,
  open_component,
  projection_diverged,
  step_underflow,
  resample_overflow,
  no_convergence,
  tangential_intersection,
  clearance_violation,
  paths_intersect,
  disconnected_graph,
  degenerate_basis,
  ill_conditioned,
  non_integral_coordinates,
  decomposition_violation,
  diameter_violation,
  audit_failed,
  no_stabilization,
  zero_on_contour,
  refinement_overflow,
  degenerate_set,
  config_violation,
  r_too_small,
  coincident_points,
  bad_argument,
  internal_error,
};

const char* errc_name(errc e);

// Library errors carry a machine readable code plus a human readable message.
class error : public std::runtime_error {
public:
  error(errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw error(code, msg);
}

// Named tolerances and knobs. Defaults are in source-space units of the
// normalized polynomial; every entry can be overridden from the CLI/config.
struct tolerances {
  double gradient = 1e-10;          // critical point residual |grad H|
  double hessian = 1e-8;            // Morse degeneracy threshold |det Hess|
  double value_coincidence = 1e-8;  // critical value / root separation
  double on_curve = 1e-9;           // |H(p) - t| after projection
  double quadrature = 1e-9;         // relative tolerance of loop integrals
  double integer_residual = 1e-4;   // homology coordinate rounding residual
  double det_monodromy = 1e-6;      // single-valuedness of det of periods
  double fit_residual = 1e-6;       // polynomial fit of det of periods
  double period_match = 1e-6;       // period vector comparisons
  double exactness = 1e-8;          // integrals of exact forms
  double reality = 1e-7;            // relative size of spurious real parts
  double zero_proximity = 1e-12;    // |f| floor on contours
  double match_distance = 1e-6;     // cycle point coincidence clustering
  double h_min = 1e-4;              // resampling band, lower edge
  double h_max = 1e-2;              // resampling band, upper edge
  uint64_t seed = 0x5eed5eed5eedULL;
};

struct config {
  tolerances tol;
  int c_appendix = 5000;  // universal constant in the headline bound
  int max_refine = 24;    // adaptive bisection depth for winding counts
  int max_quad_levels = 12;
};

}  // namespace abelint

#endif
