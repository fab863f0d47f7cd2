#ifndef ABELINT_NORMALIZE_HPP
#define ABELINT_NORMALIZE_HPP

#include <vector>

#include "abelint/poly2.hpp"

namespace abelint {

struct disk { complex center; double radius = 0; };

// Minimal enclosing disk of a finite point set (randomized incremental,
// deterministic for a fixed seed).
disk minimal_enclosing_disk(std::vector<complex> pts, uint64_t seed);

struct affine_map1 { complex a{1}, b{0}; };   // t -> a t + b on values
struct affine_map2 { complex s{1}; complex u{0}, v{0}; };  // (x,y)->(sx+u,sy+v)

struct balance_result {
  poly2 G;            // a H + b, critical values minimally inside |t| <= 2
  affine_map1 map;    // the (a, b) applied to values of H
  disk value_disk;    // minimal disk of the critical values of H
};

// Post: critical values of G lie in the closed disk of radius 2 and in no
// smaller one. Throws not_enough_critical_values when all values coincide.
balance_result balance(const poly2& H, const config& cfg);

// Max of |h| over the unit sphere |x|^2+|y|^2=1 in C^2, h homogeneous.
// Coarse 256x256 grid over (phi, theta) followed by local refinement.
double hmax_norm(const poly2& h, double rel_tol = 1e-10);

struct rescale_result {
  poly2 N;             // unit top-form sup norm, critical point at origin
  affine_map2 frame;   // source map back to the input coordinates
};

// Source rescale (x,y) -> (sx,sy) with s = |h|^(-1/(n+1)) followed by the
// translation putting the critical point of smallest modulus (lexicographic
// tie break) at the origin.
rescale_result rescale(const poly2& G, const config& cfg);

struct gap_report {
  double c1 = 0, c2 = 0;       // top-form root gap, critical value gap
  double c_prime = 0;          // min(c1, 1)
  double c_dprime = 0;         // min(c2, 1)
  double nu = 0;               // c'' / (4 n^2)
  double log_A = 0;            // n^4 / c''
  int n = 0;
};

// Fubini-Study distance between projective points (x1:y1), (x2:y2),
// arccos convention, range [0, pi/2].
double fs_distance(complex x1, complex y1, complex x2, complex y2);

gap_report gap_functions(const poly2& H, const config& cfg);

struct normalization_report {
  poly2 input;
  balance_result balanced;
  rescale_result rescaled;
  gap_report gaps;
  ultra_morse_report morse;
  std::vector<critical_point> normalized_points;  // of the normalized poly
};

// Full pipeline: ultra-Morse check, balance, rescale, gap functions.
normalization_report normalize(const poly2& H, const config& cfg);

}  // namespace abelint

#endif
