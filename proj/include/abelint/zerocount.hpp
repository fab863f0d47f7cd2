#ifndef ABELINT_ZEROCOUNT_HPP
#define ABELINT_ZEROCOUNT_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "abelint/monodromy.hpp"

namespace abelint {

// Oriented polyline in the t plane used for argument tracking. The listed
// vertices are the coarse skeleton; tracking refines between them as
// needed, so builders only have to resolve the geometry, not the function.
// Closed contours repeat the first vertex at the end.
struct contour {
  std::vector<complex> v;
  bool closed = false;

  double length() const;
  // Consecutive vertices distinct; closed contours return to the start.
  void validate() const;

  static contour from_path(const path& p, bool closed);
  static contour circle(complex center, double radius, int min_pieces = 96);
  static contour arc(complex center, double radius, double ang0, double ang1,
                     int min_pieces = 48);
  static contour segment(complex a, complex b, int pieces = 16);
  // Appends q (q must start where this contour ends).
  contour& then(const contour& q);
  // Sum of |exterior angles| at the interior vertices (plus the wrap
  // vertex for closed contours): the total curvature of the polyline.
  double total_curvature() const;
};

// A function evaluated by analytic continuation along straight segments.
// advance(t) continues from the current point to t and returns the value
// at t; save()/restore() snapshot the continuation state so adaptive
// bisection can backtrack without replaying history. Multivalued functions
// (Abelian integrals on the cover of the punctured t plane) are handled by
// the statefulness: the value at a point depends on the walk that led
// there, which is exactly what a contour traversal supplies.
class function_probe {
 public:
  virtual ~function_probe() = default;
  virtual complex advance(complex t) = 0;
  virtual std::size_t save() = 0;
  virtual void restore(std::size_t token) = 0;
};

// Single valued functions: continuation state is trivial.
class closed_form_probe final : public function_probe {
 public:
  explicit closed_form_probe(std::function<complex(complex)> f)
      : f_(std::move(f)) {}
  complex advance(complex t) override { return f_(t); }
  std::size_t save() override { return 0; }
  void restore(std::size_t) override {}

 private:
  std::function<complex(complex)> f_;
};

// The integral of a 1-form over a cycle family: advance(t) Gauss-Manin
// transports the supporting cycle along the straight segment to t and
// integrates. The caller is responsible for keeping the requested segments
// away from the critical values of H (transport fails loudly otherwise).
class integral_probe final : public function_probe {
 public:
  integral_probe(const poly2& H, one_form omega, cycle start, config cfg);
  complex advance(complex t) override;
  std::size_t save() override;
  void restore(std::size_t token) override;
  const cycle& state() const { return cur_; }

 private:
  struct snap {
    cycle c;
    complex val;
    bool fresh = false;
  };
  poly2 H_;
  one_form omega_;
  config cfg_;
  cycle cur_;
  complex val_;
  bool fresh_ = false;
  std::vector<snap> saved_;
};

// Thrown when |f| sinks below the zero-proximity floor on a contour; the
// offending location lets zero counters place a detour and retry.
class zero_on_contour_error : public error {
 public:
  zero_on_contour_error(complex where, double abs_value,
                        const std::string& msg)
      : error(errc::zero_on_contour, msg),
        location(where),
        abs_value(abs_value) {}
  complex location;
  double abs_value = 0;
};

struct track_options {
  double step_cap = 1.25;  // refine while an argument step reaches this
                           // (kept below pi/2 so winding is unambiguous)
  int max_depth = 0;       // bisection depth per edge; 0 = cfg.max_refine
  double zero_rel = 0;     // |f| floor relative to the contour max;
                           // 0 = cfg.tol.zero_proximity
  double closure_tol = 1e-6;  // closed contours: relative mismatch allowed
                              // between the start and return values
  bool keep_samples = false;  // record the refined samples in the report
};

// One adaptive argument-tracking sweep along a contour.
struct argument_track {
  double variation = 0;  // V: sum of |argument steps| over refined samples
  double increment = 0;  // R: signed sum; |R| <= V
  long winding = 0;      // round(R / 2 pi), closed contours only
  double min_abs = 0, max_abs = 0;  // |f| range over the samples
  double closure_gap = 0;           // |f(end) - f(start)| / max_abs
  double max_step = 0;              // largest refined |argument step|
  int samples = 0;
  std::vector<complex> ts, fs;  // kept when keep_samples is set
};

// Walks the contour and tracks arg f with adaptive bisection until every
// successive argument step is below step_cap. Throws zero_on_contour_error
// when |f| sinks under the relative floor (or refinement keeps failing
// right at a sample with collapsing |f|), refinement_overflow when an edge
// exhausts the bisection depth away from a zero, audit_failed when a
// closed contour does not return to its starting value (the function is
// not single valued along it).
argument_track track_argument(function_probe& f, const contour& G,
                              const config& cfg,
                              const track_options& opt = {});

// Zeros of f (with multiplicity) enclosed by a closed contour, by the
// argument principle. f must be holomorphic inside.
long winding_count(function_probe& f, const contour& G, const config& cfg,
                   const track_options& opt = {});

struct variation_report {
  double variation = 0;  // V >= |R|
  double increment = 0;  // R
  int samples = 0;
};

// V and R along an open or closed contour.
variation_report variation_of_argument(function_probe& f, const contour& G,
                                       const config& cfg,
                                       const track_options& opt = {});

// Winding of f on the circle |t - z0| = r: the local multiplicity of a
// zero at z0 when it is the only one inside. The probe reaches the circle
// by a straight advance from its current point.
long local_multiplicity(function_probe& f, complex z0, double r,
                        const config& cfg, const track_options& opt = {});

// log(M/m) with M the max of |f| over the outer sample set and m over the
// inner one. The outer max is floored by the inner max (the inner set lies
// inside the outer domain, so the true sup can only be larger; sampling
// noise must not drive the index negative).
struct bernstein_report {
  double index = 0;      // log(M / m) >= 0
  double log_max_u = 0;  // log M
  double log_max_k = 0;  // log m
  int u_samples = 0, k_samples = 0;
};

// Pure arithmetic on precomputed values (use when sampling requires cover
// transport). Throws degenerate_set when every inner sample is below the
// underflow floor.
bernstein_report bernstein_from_values(const std::vector<complex>& k_values,
                                       const std::vector<complex>& u_values);

// Samples f at the inner points and along the domain boundary at the given
// spacing (the max over the boundary estimates sup over the domain by the
// maximum principle). Assumes straight-segment continuation between
// consecutive samples is unobstructed; use bernstein_from_values with an
// external sampler otherwise.
bernstein_report bernstein_index(function_probe& f,
                                 const std::vector<complex>& k_points,
                                 const contour& u_boundary, double spacing,
                                 const config& cfg);

// One-sided audit of the growth-and-zeros bound: the number of zeros of a
// holomorphic function on an inner set K never exceeds
// exp(2 D / eps) * B, with D an upper bound for the intrinsic diameter of
// K, eps a lower bound for the gap between K and the domain boundary, and
// B the Bernstein index of the function for (K, U). The right hand side is
// kept in log space; rhs overflows to +inf harmlessly. A measured
// violation indicates an implementation bug, never a refutation.
struct growth_zeros_report {
  int zeros = 0;
  double bernstein = 0;
  double diameter = 0, gap = 0;
  double log_rhs = 0;  // 2 D / eps + log B
  double rhs = 0;      // exp(log_rhs), +inf when it overflows
  bool holds = false;
};

growth_zeros_report growth_zeros_check(int zeros_in_k,
                                       const bernstein_report& b,
                                       double diameter, double gap);

// Convenience for functions with unobstructed straight-line continuation:
// samples the Bernstein index (boundary spacing gap/4) and audits. The
// zero count comes from the caller's oracle for K.
growth_zeros_report growth_zeros_check(function_probe& f,
                                       const std::vector<complex>& k_points,
                                       const contour& u_boundary,
                                       double diameter, double gap,
                                       int zeros_in_k, const config& cfg);

// One-sided audit of the variation-of-argument bound: V along a curve
// never exceeds B * (|curve|/eps + curvature + 1) * exp(5 D / eps), with B
// the Bernstein index for (middle domain, outer domain), eps below 1/2 (a
// larger supplied gap is clipped to 0.49 and recorded), and D > 1 bounding
// the intrinsic diameters of the two inner domains.
struct kry_report {
  double variation = 0;  // measured V along the curve
  double bernstein = 0;  // log(sup outer / sup middle)
  double length = 0, curvature = 0;
  double eps = 0, diameter = 0;  // values used (after clipping)
  double log_rhs = 0;
  double rhs = 0;  // exp(log_rhs), +inf when it overflows
  bool holds = false;
  bool eps_clipped = false;
};

kry_report kry_check_from_measurements(double variation, double length,
                                       double curvature,
                                       const std::vector<complex>& u2_values,
                                       const std::vector<complex>& u_values,
                                       double eps, double diameter);

// Full check for the nested-domains case: audits the gap chain
// curve -> middle -> intermediate -> outer (each >= eps) and the vertex
// diameters of the two inner domains (<= D), measures V along the curve
// and the Bernstein index from boundary samples, then audits the bound.
// Throws config_violation when a precondition fails. Assumes unobstructed
// straight-segment continuation (single valued f or wide clearance).
kry_report kry_check(function_probe& f, const contour& gamma,
                     const contour& u2_boundary, const contour& u1_boundary,
                     const contour& u_boundary, double eps, double diameter,
                     const config& cfg, const track_options& opt = {});

// Zeros of the integral of omega over the transported family on a real
// interval: the integral is real there (real polynomial, real form,
// conjugation-invariant family), sign changes are bisected, and every
// located zero is confirmed by the winding on a surrounding circle (its
// local multiplicity). [lo, hi] must stay inside the family's regular
// interval; the reality of the sampled values is audited.
struct real_zero_scan {
  std::vector<double> zeros;
  std::vector<int> multiplicities;
  std::vector<double> ts;       // sample grid
  std::vector<complex> values;  // integral at the samples
  double max_im_rel = 0;        // reality audit residual
  int count = 0;                // zeros.size()
};

real_zero_scan scan_real_zeros(const poly2& H, const one_form& omega,
                               const cycle& family, double lo, double hi,
                               int samples, const config& cfg);

// Values of the integral of omega over the family transported across a
// lifted set: one entry per sample along the arcs (the set itself) plus
// outward shell samples at distance eps from every stride-th set sample in
// several directions (a sup estimator for the eps-thickening of the set in
// the cover). The family must be the root cycle the set was built around.
struct lifted_sample_set {
  std::vector<complex> set_points;  // base projections of the set samples
  std::vector<complex> set_values;
  std::vector<complex> shell_points;
  std::vector<complex> shell_values;
  double eps = 0;
  double spacing = 0;
};

lifted_sample_set sample_family_on_lifted_set(
    const marked_system& sys, const lifted_tree_set& K, const cycle& family,
    const one_form& omega, double eps, double spacing, int shell_stride,
    int shell_directions, const config& cfg);

// Reality-and-branching audit of the integral near one real critical
// value a. The jump of I across a full turn around a equals l0 * J, where
// l0 is the intersection of the family with the local vanishing cycle and
// J is the integral of omega over that cycle. The audit checks:
//   (i)  l0 * J is purely imaginary at real points near a (vacuously when
//        l0 = 0, where the jump vanishes and I is single valued around a);
//   (ii) the continuation of I around +-2 pi matches I -+ s * l0 * J at
//        matching base points, with one calibrated sign s for the whole
//        run (the cycle orientation convention is not canonical);
//   (iii) flipping s breaks the match (the test has power), l0 != 0 only.
struct petrov_report {
  double a = 0;  // audited critical value
  int l0 = 0;    // family o vanishing-cycle intersection
  int sign = +1;
  bool vacuous = false;      // l0 == 0
  double max_re_rel = 0;     // reality residual of l0 * J on the samples
  double match_err = 0;      // continuation jump vs +- s l0 J, relative
  double univalence_err = 0; // vacuous case: |I after turn - I| relative
  double flip_err = 0;       // match error with the flipped sign
  bool flip_detects = false; // flip_err exceeds match_err by 100x
  int samples = 0;
};

petrov_report petrov_audit(const poly2& H, const one_form& omega,
                           const cycle& family, const critical_point& cp,
                           int reality_samples, const config& cfg);

// Zeros of f inside the sector of the annulus psi < |t - a| < nu whose
// angular coordinate spans [-2 pi l, 2 pi l] on the cover (the slit points
// along the positive real offset from a). The boundary is walked outer
// arc (counterclockwise), inward slit edge at +2 pi l, inner arc
// (clockwise), outward slit edge at -2 pi l, and f is continued along it.
// A zero detected on a slit edge is bypassed by a half-circle detour
// (upper on the inward edge, lower on the outward edge, radius half the
// distance to the nearest other detected zero, clipped to the annulus);
// the detours bulge away from the sector, so bypassed zeros are counted.
// For a single valued f, every zero of the annulus is seen once per sheet
// (2 l sheets); per_sheet restores the plain count.
struct sector_zero_report {
  int total = 0;        // winding along the (modified) sector boundary
  int sheets = 0;       // 2 l
  double per_sheet = 0; // total / sheets
  int detours = 0;
  std::vector<complex> detour_centers;
  double r_outer = 0;   // signed argument increment along the outer arc
  double r_inner = 0;   // along the inner arc
  double r_exit = 0;    // along the inward slit edge (+2 pi l)
  double r_return = 0;  // along the outward slit edge (-2 pi l)
  double variation = 0;
  double closure_gap = 0;
  long samples = 0;
};

sector_zero_report count_zeros_in_annulus_sector(function_probe& f,
                                                 complex a, double psi,
                                                 double nu, int l,
                                                 const config& cfg,
                                                 const track_options& opt = {});

}  // namespace abelint

#endif
