#ifndef ABELINT_MONODROMY_HPP
#define ABELINT_MONODROMY_HPP

#include <Eigen/Dense>
#include <vector>

#include "abelint/cycles.hpp"
#include "abelint/normalize.hpp"

namespace abelint {

// Regular paths from a base point to each critical value, built lane by
// lane so that paths sharing a ray from t0 stay disjoint outside t0, with
// circular detours around every other critical value a path passes close
// to. All loop material keeps distance >= nu from every critical value.
struct special_path_set {
  complex t0;
  double nu = 0;
  std::vector<complex> values;

  // Per critical value j:
  std::vector<path> alphas;     // t0 -> a_j, ends at the value itself
  std::vector<path> entries;    // t0 -> entry point on the nu circle
  std::vector<path> truncated;  // t0 -> seed point at distance nu/2
  std::vector<path> lambdas;    // entry + full nu circle + reversed entry
  std::vector<double> detour_radius;  // per-path obstacle detour radius
};

// Builds the path set: straight rays with lateral lanes for values sharing
// a direction from t0, detours around intervening values, loops around the
// nu circles. Audits pairwise disjointness outside t0, self intersection,
// per-path length < 9, and nu clearance of the loop material.
// Throws clearance_violation when the values crowd t0 (distance < 2 nu)
// or a detour cannot be placed, paths_intersect when the audit fails.
special_path_set special_paths(const std::vector<complex>& values, complex t0,
                               double nu, const config& cfg);

// A marked system of vanishing cycles over the base point t0: one cycle per
// critical value, delivered along the special paths, with the intersection
// matrix, the cached period matrix of the standard forms, and the global
// Picard-Lefschetz sign calibrated against numerical continuation.
struct marked_system {
  poly2 H;
  complex t0;
  double nu = 0;
  gap_report gaps;
  std::vector<critical_point> points;  // index order of the system
  std::vector<complex> values;         // points[j].value
  special_path_set paths;
  std::vector<cycle> deltas;           // vanishing cycles at t0
  Eigen::MatrixXi intersection;        // intersection(i,j) = delta_i o delta_j
  int pl_sign = +1;                    // calibrated monodromy sign
  std::vector<one_form> forms;         // standard form set, mu = n^2 entries
  Eigen::MatrixXcd period;             // period(i,j) = integral of forms[i]
                                       // over deltas[j]
  double period_cond = 0;              // sigma_min / sigma_max of period

  int mu() const { return int(deltas.size()); }
};

// Full construction. Preconditions: H ultra-Morse (not_ultra_morse
// otherwise), critical values balanced into the standard disk |t| <= 2
// (config_violation otherwise; the nu geometry needs the 4 nu value
// separation that balancing guarantees), |t0| <= 3 and distance(t0,
// values) >= nu (config_violation).
// Audits: intersection matrix computed independently both ways and checked
// skew symmetric with zero diagonal (audit_failed), intersection graph
// connected (disconnected_graph), period matrix nonsingular
// (degenerate_basis), Picard-Lefschetz sign match (audit_failed).
marked_system build_marked_system(const poly2& H, complex t0,
                                  const config& cfg);

// Action of the monodromy around value j on a homology vector in the delta
// basis: v + sign * (v o delta_j) e_j.
Eigen::VectorXi picard_lefschetz_apply(const marked_system& sys, int j,
                                       const Eigen::VectorXi& v);

// Integer coordinates of a cycle on the base fiber in the delta basis,
// solved through the period matrix. Throws non_integral_coordinates when
// the rounding residual exceeds tol.integer_residual, ill_conditioned when
// the cached period matrix is too singular to trust.
Eigen::VectorXi homology_coordinates(const marked_system& sys, const cycle& c,
                                     const config& cfg);

// Decomposition of a real oval into vanishing cycles with signs in
// {-1, 0, +1}. Requires real H and real t0 (config_violation). Audits that
// the nonzero entries are exactly the real critical points enclosed by the
// oval (decomposition_violation otherwise).
Eigen::VectorXi oval_decomposition(const marked_system& sys, const cycle& oval,
                                   const config& cfg);

// One polyline in the cover of the punctured t plane: the base projection
// plus the winding fingerprint (accumulated angle around each critical
// value) of the access path at the polyline start. Points of the cover are
// equal when base points and fingerprints both match.
struct cover_arc {
  path base;
  std::vector<double> fp_start;
  int loop_index = -1;  // lambda index for lifted loops, -1 for sigma parts
  path access;          // t-plane walk from t0 realizing fp_start; a single
                        // vertex (or empty) when the arc starts on the base
                        // sheet. Lets samplers re-transport a cycle to the
                        // arc start without replaying the tree construction.
};

// Record of the class jump across one tree edge: continuing the root cycle
// around lambda[child] changes its class by multiple * e_child.
struct tree_jump {
  int parent = -1;  // parent vertex, -1 for the root class
  int child = -1;
  int multiple = 0;      // nonzero integer
  double residual = 0;   // continuation vs integer-multiple mismatch
};

// The lifted tree set: a spanning tree of the intersection graph lifted to
// the cover loop by loop (K'), plus the real-segment material sigma with
// its circle loops (K = K' union sigma), with intrinsic diameters measured
// on the merged sample graph and the clearance of the base projection.
struct lifted_tree_set {
  bool modified = false;
  int root_delta = -1;  // distinguished cycle for the modified variant
  std::vector<int> parent;             // parent[j] per cycle, -1 = root class
  std::vector<int> depth;              // BFS distance from the root class
  std::vector<cover_arc> loops;        // lifted lambda loops, K'
  std::vector<cover_arc> sigma;        // sigma + circle loops (or alpha_l +
                                       // nu circle for the modified variant)
  std::vector<tree_jump> jumps;        // one per tree edge
  double diameter_kprime = 0;
  double diameter_k = 0;
  double clearance = 0;  // min distance of the base material to the values
};

// Standard variant: root class = a real oval on the base fiber. Builds the
// BFS tree of the intersection graph extended by the oval row, lifts one
// loop per tree edge, attaches sigma(t0, nu) with its circle loops around
// the neighbour real critical values (or the |t| = 3 arcs when t0 has no
// real critical value on that side). Audits diameter(K') < 19 n^2,
// diameter(K) < 36 n^2, clearance >= nu, and the integer class jump across
// every tree edge against numerical continuation.
lifted_tree_set build_K(const marked_system& sys, const cycle& oval,
                        const config& cfg);

// Modified variant: root class = delta_l; sigma is replaced by the entry
// path of alpha_l plus the full nu circle around a_l (the nu disk modeled
// by its boundary, which can only overestimate the diameter and keeps the
// clearance audit uniform at nu).
lifted_tree_set build_K_modified(const marked_system& sys, int l,
                                 const config& cfg);

// Branching behaviour of a cycle family under continuation around the
// circle |t| = R enclosing every critical value.
struct infinity_report {
  int observed_order = 0;       // least k <= n+1 with period vector return
  bool divides_n_plus_1 = false;
  double drift = 0;             // residual of the period vector at return
  std::vector<complex> omega_periods;  // integral of omega after each circuit
  std::vector<double> drifts;          // period vector residual per circuit
};

// Continues `family` around |t| = R up to n+1 times and reports the least
// circuit count after which the standard-form period vector (and the
// integral of omega) return to their initial values within
// tol.period_match. Throws r_too_small when the circle does not enclose
// the critical values with margin, audit_failed when the vector has not
// returned after n+1 circuits.
infinity_report monodromy_at_infinity(const poly2& H, const one_form& omega,
                                      double R, const cycle& family,
                                      const config& cfg);

}  // namespace abelint

#endif
