#include "abelint/monodromy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "abelint/periods.hpp"

namespace abelint {
namespace {

constexpr double kTau = 2.0 * M_PI;

// Piece count and vertex inflation identical to arc_path, so adjoining
// straight legs can be landed exactly on the first arc vertex.
int arc_pieces(double span, int min_pieces = 24) {
  return std::max(min_pieces, int(std::ceil(std::abs(span) / kTau * 64)));
}

double arc_vertex_radius(double radius, double span, int min_pieces = 24) {
  int k = arc_pieces(span, min_pieces);
  return radius / std::cos(std::abs(span) / (2.0 * k));
}

double seg_pt_distance(complex p, complex q, complex r) {
  complex d = q - p;
  double L2 = std::norm(d);
  double s =
      L2 > 0 ? std::clamp(((r - p) * std::conj(d)).real() / L2, 0.0, 1.0) : 0.0;
  return std::abs(r - (p + s * d));
}

double seg_seg_distance(complex a0, complex a1, complex b0, complex b1) {
  auto orient = [](complex p, complex q, complex r) {
    return (std::conj(q - p) * (r - p)).imag();
  };
  double o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
  double o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return 0.0;
  return std::min(
      std::min(seg_pt_distance(a0, a1, b0), seg_pt_distance(a0, a1, b1)),
      std::min(seg_pt_distance(b0, b1, a0), seg_pt_distance(b0, b1, a1)));
}

struct ray_slot {
  complex dir;  // shared unit direction of the ray group
  int lane = 0;
  int group_size = 1;
};

// Groups the critical values by their direction seen from t0 (tolerance
// 1e-9 in angle, seam at the negative real axis handled) and ranks each
// group member by distance. Values sharing a ray get distinct lanes.
std::vector<ray_slot> assign_lanes(const std::vector<complex>& values,
                                   complex t0) {
  int m = int(values.size());
  std::vector<double> ang(m);
  for (int j = 0; j < m; ++j) ang[j] = std::arg(values[j] - t0);
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return ang[a] != ang[b] ? ang[a] < ang[b] : a < b;
  });
  std::vector<int> group_of(m, 0);
  int g = 0;
  for (int idx = 0; idx < m; ++idx) {
    int j = order[idx];
    if (idx > 0 && std::abs(ang[j] - ang[order[idx - 1]]) > 1e-9) ++g;
    group_of[j] = g;
  }
  if (g > 0 &&
      std::abs(ang[order.front()] + kTau - ang[order.back()]) <= 1e-9) {
    for (int j = 0; j < m; ++j)
      if (group_of[j] == g) group_of[j] = 0;
  }
  std::map<int, std::vector<int>> groups;
  for (int j = 0; j < m; ++j) groups[group_of[j]].push_back(j);
  std::vector<ray_slot> slots(m);
  for (auto& [gid, mem] : groups) {
    std::sort(mem.begin(), mem.end(), [&](int a, int b) {
      double da = std::abs(values[a] - t0), db = std::abs(values[b] - t0);
      return da != db ? da < db : a < b;
    });
    complex d = (values[mem[0]] - t0) / std::abs(values[mem[0]] - t0);
    for (int r = 0; r < int(mem.size()); ++r)
      slots[mem[r]] = {d, r, int(mem.size())};
  }
  return slots;
}

// Appends a straight run to `p`, subdivided to at most `step` per piece so
// diameter measurements on the sample graph stay sharp.
void add_leg(path& p, complex to, double step = 0.05) {
  complex from = p.v.back();
  double L = std::abs(to - from);
  if (L < 1e-13) return;
  int pieces = std::max(1, int(std::ceil(L / step)));
  for (int s = 1; s <= pieces; ++s)
    p.v.push_back(from + (to - from) * (double(s) / pieces));
}

}  // namespace

special_path_set special_paths(const std::vector<complex>& values, complex t0,
                               double nu, const config& cfg) {
  int mu = int(values.size());
  if (mu == 0) fail(errc::bad_argument, "no critical values to reach");
  if (!(nu > 0)) fail(errc::bad_argument, "nu must be positive");
  special_path_set S;
  S.t0 = t0;
  S.nu = nu;
  S.values = values;

  double dmin = std::numeric_limits<double>::infinity();
  for (complex v : values) dmin = std::min(dmin, std::abs(v - t0));
  if (dmin < 2.0 * nu)
    fail(errc::clearance_violation,
         "critical values crowd the base point: the lane fan needs "
         "distance at least 2 nu");

  auto slots = assign_lanes(values, t0);
  const double rho_e = arc_vertex_radius(nu, kTau);

  // Detour radii are globally distinct (concentric arcs of different paths
  // around one obstacle never touch) and increase with the lane index: a
  // higher lane resumes its straight run at sqrt(r'^2 - o'^2) from the
  // obstacle, which clears the lower arc's reach sqrt(r^2 - o'^2) at that
  // height exactly when r' > r, so arcs nest with the lane stack.
  std::vector<int> by_lane(mu);
  std::iota(by_lane.begin(), by_lane.end(), 0);
  std::sort(by_lane.begin(), by_lane.end(), [&](int a, int b) {
    return slots[a].lane != slots[b].lane ? slots[a].lane < slots[b].lane
                                          : a < b;
  });
  std::vector<double> rdet_of(mu);
  for (int s = 0; s < mu; ++s)
    rdet_of[by_lane[s]] = nu * (1.0 + double(s + 1) / (4.0 * mu));

  for (int j = 0; j < mu; ++j) {
    complex d = slots[j].dir;
    double angd = std::arg(d);
    bool keep = angd > -M_PI / 2 - 1e-12 && angd <= M_PI / 2 + 1e-12;
    complex dline = keep ? d : -d;  // canonical direction of the lane line
    double side = keep ? 1.0 : -1.0;
    complex nhat = complex(0, 1) * dline;
    double o = slots[j].group_size == 1
                   ? 0.0
                   : double(slots[j].lane) * nu / (4.0 * slots[j].group_size);
    complex B = t0 + o * nhat;  // lane line passes B along d
    auto to_frame = [&](complex p) { return std::conj(d) * (p - B); };
    auto from_frame = [&](complex z) { return B + d * z; };

    complex fj = to_frame(values[j]);
    double sj = fj.real(), qj = fj.imag();
    if (sj <= 0)
      fail(errc::internal_error, "lane target fell behind the base point");
    double he = std::sqrt(std::max(rho_e * rho_e - qj * qj, 0.0));
    double ue = sj - he;        // entry station on the lane line
    const double u0 = 0.5 * nu;  // diagonal handoff station
    if (ue < u0 + 0.05 * nu)
      fail(errc::clearance_violation,
           "entry circle reaches back to the base point");
    double rdet = rdet_of[j];

    struct det_rec {
      double uin, uout;
      std::vector<complex> arc;
    };
    std::vector<det_rec> dets;
    for (int i = 0; i < mu; ++i) {
      if (i == j) continue;
      complex fi = to_frame(values[i]);
      double ui = fi.real(), wi = fi.imag();
      if (std::abs(wi) >= rdet - 1e-3 * nu) continue;  // lane clears it
      // Inflated vertex radius: chords of the sampled arc never dip below
      // rdet. Span and radius depend on each other; iterate to the fixed
      // point.
      double rv = rdet, span = M_PI;
      int k = 24;
      for (int it = 0; it < 4; ++it) {
        double hw0 = std::sqrt(std::max(rv * rv - wi * wi, 0.0));
        span = 2.0 * std::atan2(hw0, std::abs(wi));
        k = arc_pieces(span);
        rv = rdet / std::cos(span / (2.0 * k));
      }
      double hw = std::sqrt(std::max(rv * rv - wi * wi, 0.0));
      double uin = ui - hw, uout = ui + hw;
      if (uout <= u0 || uin >= ue) continue;  // lane segment stays outside
      if (uin < u0 + 0.02 * nu || uout > ue - 0.02 * nu)
        fail(errc::clearance_violation,
             "detour around a neighbouring value collides with the lane ends");
      double thA = std::atan2(-wi, -hw);
      double thB = std::atan2(-wi, hw);
      double dth = std::remainder(thB - thA, kTau);
      // The short arc lies on the side of the lane line away from the
      // obstacle. Exactly on the line both arcs tie; take the +nhat side,
      // which is the upper half plane for real configurations.
      if (std::abs(wi) < 1e-12 * nu) dth = -side * M_PI;
      det_rec rec;
      rec.uin = uin;
      rec.uout = uout;
      rec.arc.reserve(k + 1);
      for (int s = 0; s <= k; ++s) {
        double th = thA + dth * double(s) / k;
        rec.arc.push_back(values[i] + d * std::polar(rv, th));
      }
      dets.push_back(std::move(rec));
    }
    std::sort(dets.begin(), dets.end(),
              [](const det_rec& a, const det_rec& b) { return a.uin < b.uin; });
    for (size_t q = 1; q < dets.size(); ++q)
      if (dets[q].uin <= dets[q - 1].uout + 0.02 * nu)
        fail(errc::clearance_violation, "two detours on one lane overlap");

    path ent;
    ent.v.push_back(t0);
    add_leg(ent, from_frame(complex(u0, 0.0)));
    for (const auto& rec : dets) {
      add_leg(ent, rec.arc.front());
      for (size_t s = 1; s < rec.arc.size(); ++s) ent.v.push_back(rec.arc[s]);
    }
    // Snap the entry point onto the inflated nu circle exactly where the
    // loop arc will start, so concatenation vertices coincide bitwise.
    complex e_raw = from_frame(complex(ue, 0.0));
    double thE = std::arg(e_raw - values[j]);
    complex E = values[j] + std::polar(rho_e, thE);
    add_leg(ent, E);

    path alpha = ent;
    add_leg(alpha, values[j]);
    path trunc = ent;
    add_leg(trunc, values[j] + std::polar(nu / 2, thE));
    path lam =
        ent.then(arc_path(values[j], nu, thE, thE + kTau)).then(ent.reversed());

    S.entries.push_back(std::move(ent));
    S.alphas.push_back(std::move(alpha));
    S.truncated.push_back(std::move(trunc));
    S.lambdas.push_back(std::move(lam));
    S.detour_radius.push_back(rdet);
  }

  // Audit: path lengths.
  for (int j = 0; j < mu; ++j)
    if (!(S.alphas[j].length() < 9.0))
      fail(errc::audit_failed, "path to a critical value is longer than 9");

  // Audit: self intersection. Consecutive-ish segments legitimately touch;
  // pairs at index distance >= 3 must stay apart.
  double sep = 1e-4 * nu;
  for (int j = 0; j < mu; ++j) {
    const auto& v = S.alphas[j].v;
    for (size_t a = 0; a + 1 < v.size(); ++a)
      for (size_t b = a + 3; b + 1 < v.size(); ++b)
        if (seg_seg_distance(v[a], v[a + 1], v[b], v[b + 1]) < sep)
          fail(errc::paths_intersect, "path to a critical value crosses itself");
  }

  // Audit: pairwise disjointness outside a small ball around t0, where the
  // diagonals legitimately fan out from the shared start.
  double r_excl = 0.6 * nu;
  for (int i = 0; i < mu; ++i)
    for (int j = i + 1; j < mu; ++j) {
      const auto& pv = S.alphas[i].v;
      const auto& qv = S.alphas[j].v;
      for (size_t a = 0; a + 1 < pv.size(); ++a)
        for (size_t b = 0; b + 1 < qv.size(); ++b) {
          if (seg_pt_distance(pv[a], pv[a + 1], t0) <= r_excl &&
              seg_pt_distance(qv[b], qv[b + 1], t0) <= r_excl)
            continue;
          if (seg_seg_distance(pv[a], pv[a + 1], qv[b], qv[b + 1]) < sep)
            fail(errc::paths_intersect,
                 "paths to critical values " + std::to_string(i) + " and " +
                     std::to_string(j) + " intersect near (" +
                     std::to_string(pv[a].real()) + ", " +
                     std::to_string(pv[a].imag()) + ")");
        }
    }

  // Audit: clearance. Loops keep nu to every value; the truncated carriers
  // keep nu to every other value and nu/2 to their own.
  double cl = nu * (1.0 - 1e-9);
  for (int j = 0; j < mu; ++j)
    for (int i = 0; i < mu; ++i) {
      if (S.lambdas[j].distance_to(values[i]) < cl)
        fail(errc::clearance_violation,
             "loop material dips below nu clearance");
      double want = i == j ? nu / 2 * (1.0 - 1e-9) : cl;
      if (S.truncated[j].distance_to(values[i]) < want)
        fail(errc::clearance_violation,
             "cycle carrier path dips below clearance");
      if (i != j && S.alphas[j].distance_to(values[i]) < cl)
        fail(errc::clearance_violation,
             "path to a critical value dips below nu clearance of another");
    }

  return S;
}

marked_system build_marked_system(const poly2& H, complex t0,
                                  const config& cfg) {
  marked_system sys;
  sys.H = H;
  sys.t0 = t0;
  auto rep = is_ultra_morse(H, cfg);
  if (!rep.ultra_morse)
    fail(errc::not_ultra_morse,
         "marked system needs an ultra-Morse polynomial: " + rep.diagnosis);
  sys.points = rep.points;
  std::sort(sys.points.begin(), sys.points.end(),
            [](const critical_point& a, const critical_point& b) {
              auto key = [](const critical_point& c) {
                return std::array<double, 6>{c.value.real(), c.value.imag(),
                                             c.x.real(),     c.x.imag(),
                                             c.y.real(),     c.y.imag()};
              };
              return key(a) < key(b);
            });
  for (const auto& p : sys.points) sys.values.push_back(p.value);

  // The nu geometry (lane clearances, detour radii, path length and
  // diameter bounds) is calibrated to critical values filling the standard
  // disk |t| <= 2: only then are the values pairwise at least 4 nu apart.
  {
    disk d = minimal_enclosing_disk(sys.values, cfg.tol.seed);
    if (std::abs(d.center) > 1e-6 || std::abs(d.radius - 2.0) > 1e-6)
      fail(errc::config_violation,
           "critical values do not fill the standard disk |t| <= 2; balance "
           "the polynomial first");
  }

  sys.gaps = gap_functions(H, cfg);
  sys.nu = sys.gaps.nu;

  if (std::abs(t0) > 3.0)
    fail(errc::config_violation, "base point must lie in |t| <= 3");
  for (complex v : sys.values)
    if (std::abs(t0 - v) < sys.nu)
      fail(errc::config_violation,
           "base point is closer than nu to a critical value");

  sys.paths = special_paths(sys.values, t0, sys.nu, cfg);

  int mu = int(sys.values.size());
  sys.deltas.reserve(mu);
  for (int j = 0; j < mu; ++j) {
    complex E = sys.paths.entries[j].end();
    complex dt = sys.paths.truncated[j].end() - sys.values[j];
    cycle loc = local_vanishing_cycle(H, sys.points[j], dt, cfg);
    (void)E;
    sys.deltas.push_back(
        transport_cycle(H, loc, sys.paths.truncated[j].reversed(), cfg));
  }

  // Intersection matrix, each pair evaluated in both orders independently.
  sys.intersection.resize(mu, mu);
  for (int i = 0; i < mu; ++i)
    for (int j = 0; j < mu; ++j)
      sys.intersection(i, j) =
          intersection_index(H, sys.deltas[i], sys.deltas[j], cfg);
  for (int i = 0; i < mu; ++i) {
    if (sys.intersection(i, i) != 0)
      fail(errc::audit_failed, "nonzero self intersection index");
    for (int j = 0; j < mu; ++j)
      if (sys.intersection(i, j) != -sys.intersection(j, i))
        fail(errc::audit_failed, "intersection matrix is not skew symmetric");
  }

  // Connectivity of the intersection graph.
  {
    std::vector<char> seen(mu, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < mu; ++v)
        if (!seen[v] && sys.intersection(u, v) != 0) {
          seen[v] = 1;
          ++cnt;
          q.push(v);
        }
    }
    if (cnt != mu)
      fail(errc::disconnected_graph, "intersection graph is disconnected");
  }

  int n = H.degree() - 1;
  sys.forms = standard_forms(n);
  sys.period = period_matrix_raw(H, sys.deltas, sys.forms, cfg);
  {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.period);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    sys.period_cond = smax > 0 ? smin / smax : 0.0;
    if (sys.period_cond < 1e-10)
      fail(errc::degenerate_basis,
           "period matrix of the standard forms is numerically singular");
  }

  // Calibrate the monodromy sign once against numerical continuation.
  {
    int cj = -1, ck = -1;
    for (int j = 0; j < mu && cj < 0; ++j)
      for (int k = 0; k < mu; ++k)
        if (k != j && sys.intersection(k, j) != 0) {
          cj = j;
          ck = k;
          break;
        }
    if (cj < 0)
      fail(errc::disconnected_graph, "no intersecting pair of cycles");
    cycle moved =
        transport_cycle(H, sys.deltas[ck], sys.paths.lambdas[cj], cfg);
    Eigen::VectorXcd q(mu);
    for (int i = 0; i < mu; ++i)
      q(i) = integrate_form(H, moved, sys.forms[i], cfg, cfg.tol.quadrature);
    Eigen::VectorXcd v = sys.period.colPivHouseholderQr().solve(q);
    double worst = 0;
    Eigen::VectorXi vi(mu);
    for (int i = 0; i < mu; ++i) {
      vi(i) = int(std::lround(v(i).real()));
      worst = std::max(worst, std::abs(v(i) - complex(vi(i))));
    }
    if (worst > cfg.tol.integer_residual)
      fail(errc::audit_failed,
           "continuation around a loop left the integer lattice");
    Eigen::VectorXi w = vi;
    w(ck) -= 1;
    for (int i = 0; i < mu; ++i)
      if (i != cj && w(i) != 0)
        fail(errc::audit_failed,
             "loop continuation changed more than the expected class");
    if (w(cj) % sys.intersection(ck, cj) != 0)
      fail(errc::audit_failed, "loop continuation jump is not a multiple");
    int s = w(cj) / sys.intersection(ck, cj);
    if (s != 1 && s != -1)
      fail(errc::audit_failed, "monodromy sign calibration is not +-1");
    sys.pl_sign = s;
  }
  return sys;
}

Eigen::VectorXi picard_lefschetz_apply(const marked_system& sys, int j,
                                       const Eigen::VectorXi& v) {
  int mu = sys.mu();
  if (j < 0 || j >= mu) fail(errc::bad_argument, "cycle index out of range");
  if (v.size() != mu) fail(errc::bad_argument, "class vector has wrong size");
  int pairing = 0;
  for (int i = 0; i < mu; ++i) pairing += v(i) * sys.intersection(i, j);
  Eigen::VectorXi out = v;
  out(j) += sys.pl_sign * pairing;
  return out;
}

Eigen::VectorXi homology_coordinates(const marked_system& sys, const cycle& c,
                                     const config& cfg) {
  if (sys.period_cond < 1e-10)
    fail(errc::ill_conditioned, "period matrix is too singular for solving");
  if (std::abs(c.t - sys.t0) > 1e-9)
    fail(errc::bad_argument, "cycle does not live on the base fiber");
  int mu = sys.mu();
  Eigen::VectorXcd q(mu);
  for (int i = 0; i < mu; ++i)
    q(i) = integrate_form(sys.H, c, sys.forms[i], cfg, cfg.tol.quadrature);
  Eigen::VectorXcd v = sys.period.colPivHouseholderQr().solve(q);
  Eigen::VectorXi vi(mu);
  double worst = 0;
  for (int i = 0; i < mu; ++i) {
    vi(i) = int(std::lround(v(i).real()));
    worst = std::max(worst, std::abs(v(i) - complex(vi(i))));
  }
  if (worst > cfg.tol.integer_residual)
    fail(errc::non_integral_coordinates,
         "cycle class is not an integer combination of the marked cycles");
  return vi;
}

namespace {

bool point_in_polygon(const std::vector<cpoint>& pts, double px, double py) {
  bool in = false;
  size_t n = pts.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    double xi = pts[i].x.real(), yi = pts[i].y.real();
    double xj = pts[j].x.real(), yj = pts[j].y.real();
    if ((yi > py) != (yj > py) &&
        px < (xj - xi) * (py - yi) / (yj - yi) + xi)
      in = !in;
  }
  return in;
}

}  // namespace

Eigen::VectorXi oval_decomposition(const marked_system& sys, const cycle& oval,
                                   const config& cfg) {
  if (!sys.H.is_real(1e-12) || std::abs(sys.t0.imag()) > 1e-9)
    fail(errc::config_violation,
         "oval decomposition needs a real polynomial and a real base point");
  double sz = 1.0;
  for (const auto& p : oval.pts)
    sz = std::max({sz, std::abs(p.x), std::abs(p.y)});
  for (const auto& p : oval.pts)
    if (std::abs(p.x.imag()) > 1e-6 * sz || std::abs(p.y.imag()) > 1e-6 * sz)
      fail(errc::bad_argument, "cycle is not a real oval");

  Eigen::VectorXi v = homology_coordinates(sys, oval, cfg);
  for (int j = 0; j < v.size(); ++j)
    if (std::abs(v(j)) > 1)
      fail(errc::decomposition_violation,
           "oval class has a coefficient outside {-1, 0, +1}");

  // The nonzero coefficients must be exactly the real critical points
  // enclosed by the oval.
  for (int j = 0; j < v.size(); ++j) {
    const auto& cp = sys.points[j];
    bool realpt = std::abs(cp.x.imag()) <= 1e-7 * sz &&
                  std::abs(cp.y.imag()) <= 1e-7 * sz;
    bool inside =
        realpt && point_in_polygon(oval.pts, cp.x.real(), cp.y.real());
    if (inside != (v(j) != 0))
      fail(errc::decomposition_violation,
           "nonzero coefficients disagree with the enclosed critical points");
  }
  return v;
}

namespace {

std::vector<double> fp_plus(const std::vector<double>& fp, const path& p,
                            const std::vector<complex>& centers) {
  auto w = winding_angles(p, centers);
  std::vector<double> out(fp);
  for (size_t i = 0; i < w.size(); ++i) out[i] += w[i];
  return out;
}

// Merged metric graph over the polyline samples of a set of cover arcs.
// Arc endpoints with equal base point and equal winding fingerprint are
// identified; interior samples stay distinct (coincidence of projections
// is not coincidence in the cover).
struct cover_graph {
  std::vector<std::vector<std::pair<int, double>>> adj;
  int nodes = 0;

  static cover_graph build(const std::vector<cover_arc>& arcs,
                           const std::vector<complex>& values) {
    struct endpoint {
      int vid;
      complex base;
      std::vector<double> fp;
    };
    std::vector<endpoint> eps;
    std::vector<std::tuple<int, int, double>> chords;
    int V = 0;
    for (const auto& a : arcs) {
      int first = V;
      for (size_t k = 0; k + 1 < a.base.v.size(); ++k)
        chords.emplace_back(V + int(k), V + int(k) + 1,
                            std::abs(a.base.v[k + 1] - a.base.v[k]));
      V += int(a.base.v.size());
      eps.push_back({first, a.base.v.front(), a.fp_start});
      eps.push_back(
          {V - 1, a.base.v.back(), fp_plus(a.fp_start, a.base, values)});
    }
    std::vector<int> uf(V);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    for (size_t i = 0; i < eps.size(); ++i)
      for (size_t j = i + 1; j < eps.size(); ++j) {
        if (std::abs(eps[i].base - eps[j].base) >
            1e-9 * (1.0 + std::abs(eps[i].base)))
          continue;
        double fd = 0;
        for (size_t k = 0; k < eps[i].fp.size(); ++k)
          fd = std::max(fd, std::abs(eps[i].fp[k] - eps[j].fp[k]));
        if (fd <= 1e-6) uf[find(eps[i].vid)] = find(eps[j].vid);
      }
    std::vector<int> id(V, -1);
    cover_graph g;
    for (int x = 0; x < V; ++x) {
      int r = find(x);
      if (id[r] < 0) id[r] = g.nodes++;
      id[x] = id[r];
    }
    g.adj.resize(g.nodes);
    for (auto& [a, b, w] : chords) {
      int u = id[a], v = id[b];
      g.adj[u].push_back({v, w});
      g.adj[v].push_back({u, w});
    }
    return g;
  }

  std::vector<double> dijkstra(int src) const {
    std::vector<double> dist(nodes, std::numeric_limits<double>::infinity());
    std::priority_queue<std::pair<double, int>,
                        std::vector<std::pair<double, int>>,
                        std::greater<>>
        pq;
    dist[src] = 0;
    pq.push({0.0, src});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (auto [v, w] : adj[u])
        if (dist[u] + w < dist[v]) {
          dist[v] = dist[u] + w;
          pq.push({dist[v], v});
        }
    }
    return dist;
  }

  double diameter() const {
    if (nodes == 0) return 0;
    size_t edges = 0;
    for (const auto& a : adj) edges += a.size();
    edges /= 2;
    auto d0 = dijkstra(0);
    for (double d : d0)
      if (!std::isfinite(d))
        fail(errc::internal_error, "cover set fell apart into pieces");
    if (edges == size_t(nodes) - 1) {
      // Metric tree: double sweep is exact.
      int far1 = int(std::max_element(d0.begin(), d0.end()) - d0.begin());
      auto d1 = dijkstra(far1);
      return *std::max_element(d1.begin(), d1.end());
    }
    double best = 0;
    for (int s = 0; s < nodes; ++s) {
      auto d = dijkstra(s);
      best = std::max(best, *std::max_element(d.begin(), d.end()));
    }
    return best;
  }
};

double arcs_clearance(const std::vector<cover_arc>& arcs,
                      const std::vector<complex>& values) {
  double c = std::numeric_limits<double>::infinity();
  for (const auto& a : arcs)
    for (complex v : values) c = std::min(c, a.base.distance_to(v));
  return c;
}

// Canonical BFS layers and parents over the intersection graph, optionally
// extended by a virtual root class with its own adjacency row. Parents are
// the smallest-index neighbour on the previous layer.
void bfs_tree(const Eigen::MatrixXi& M, const std::vector<int>& root_adj,
              int root_vertex, std::vector<int>& parent,
              std::vector<int>& depth) {
  int mu = int(M.rows());
  parent.assign(mu, -2);
  depth.assign(mu, -1);
  std::queue<int> q;
  if (root_vertex >= 0) {
    depth[root_vertex] = 0;
    parent[root_vertex] = -1;
    q.push(root_vertex);
  } else {
    for (int j = 0; j < mu; ++j)
      if (root_adj[j] != 0) {
        depth[j] = 1;
        parent[j] = -1;
        q.push(j);
      }
    if (q.empty())
      fail(errc::disconnected_graph,
           "root class does not intersect any marked cycle");
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < mu; ++v)
      if (M(u, v) != 0 && depth[v] < 0) {
        depth[v] = depth[u] + 1;
        q.push(v);
      }
  }
  for (int j = 0; j < mu; ++j) {
    if (depth[j] < 0)
      fail(errc::disconnected_graph, "a marked cycle is unreachable");
    if (j == root_vertex || depth[j] <= (root_vertex < 0 ? 1 : 0)) continue;
    for (int i = 0; i < mu; ++i)
      if (depth[i] == depth[j] - 1 && M(i, j) != 0) {
        parent[j] = i;
        break;
      }
  }
}

lifted_tree_set lift_tree(const marked_system& sys,
                          const std::vector<int>& parent,
                          const std::vector<int>& depth,
                          const Eigen::VectorXi& v_root,
                          const cycle& root_cycle,
                          const Eigen::VectorXcd& q_root, bool modified,
                          int root_delta, const config& cfg) {
  int mu = sys.mu();
  lifted_tree_set K;
  K.modified = modified;
  K.root_delta = root_delta;
  K.parent = parent;
  K.depth = depth;

  std::vector<int> order(mu);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return depth[a] != depth[b] ? depth[a] < depth[b] : a < b;
  });

  path acc0;
  acc0.v.push_back(sys.t0);
  std::vector<double> fp0(mu, 0.0);
  std::vector<std::vector<double>> fp(mu);
  std::vector<Eigen::VectorXi> cls(mu);
  std::vector<cycle> gam(mu);
  std::vector<Eigen::VectorXcd> qv(mu);
  std::vector<path> acc(mu);

  for (int v : order) {
    if (v == root_delta) {
      fp[v] = fp0;
      cls[v] = v_root;
      gam[v] = root_cycle;
      qv[v] = q_root;
      acc[v] = acc0;
      continue;
    }
    int p = parent[v];
    const auto& fpp = p < 0 ? fp0 : fp[p];
    const auto& vp = p < 0 ? v_root : cls[p];
    const cycle& gp = p < 0 ? root_cycle : gam[p];
    const auto& qp = p < 0 ? q_root : qv[p];
    const path& accp = p < 0 ? acc0 : acc[p];
    const path& lam = sys.paths.lambdas[v];

    cover_arc arc;
    arc.base = lam;
    arc.fp_start = fpp;
    arc.loop_index = v;
    arc.access = accp;
    K.loops.push_back(arc);

    Eigen::VectorXi vc = picard_lefschetz_apply(sys, v, vp);
    int l = vc(v) - vp(v);
    if (l == 0)
      fail(errc::audit_failed,
           "tree edge carries a zero class jump; the lift is not regular");

    cycle gc = transport_cycle(sys.H, gp, lam, cfg);
    Eigen::VectorXcd qc(mu);
    for (int i = 0; i < mu; ++i)
      qc(i) =
          integrate_form(sys.H, gc, sys.forms[i], cfg, cfg.tol.quadrature);
    Eigen::VectorXcd want = double(l) * sys.period.col(v);
    double den = std::max(want.norm(), 1e-300);
    double resid = (qc - qp - want).norm() / den;
    if (resid > cfg.tol.period_match)
      fail(errc::audit_failed,
           "class jump across a tree edge does not match continuation");
    K.jumps.push_back({p, v, l, resid});

    fp[v] = fp_plus(fpp, lam, sys.values);
    cls[v] = vc;
    gam[v] = gc;
    qv[v] = qc;
    acc[v] = accp.then(lam);
  }
  return K;
}

// The real segment through t0 between the neighbouring real critical
// values (shrunk by the circle radius), with the loop circles around the
// finite ends and |t| = 3 arcs for the infinite ones.
std::vector<cover_arc> sigma_standard(const marked_system& sys,
                                      const config& cfg) {
  int mu = sys.mu();
  int n = sys.H.degree() - 1;
  double t0r = sys.t0.real();
  bool have_a = false, have_b = false;
  double a = 0, b = 0;
  for (complex v : sys.values) {
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v))) continue;
    double x = v.real();
    if (x < t0r && (!have_a || x > a)) {
      a = x;
      have_a = true;
    }
    if (x > t0r && (!have_b || x < b)) {
      b = x;
      have_b = true;
    }
  }
  std::vector<double> zero(mu, 0.0);
  std::vector<cover_arc> out;
  auto attach_side = [&](bool have, double value, bool left) {
    path arcp, arcm;
    if (have) {
      double ang0 = left ? 0.0 : M_PI;
      arcp = arc_path(value, sys.nu, ang0, ang0 + kTau);
      arcm = arc_path(value, sys.nu, ang0, ang0 - kTau);
    } else {
      double span = 2.0 * (n + 1) * M_PI;
      double ang0 = left ? M_PI : 0.0;
      arcp = arc_path(0.0, 3.0, ang0, ang0 + span);
      arcm = arc_path(0.0, 3.0, ang0, ang0 - span);
    }
    complex endp = arcp.v.front();
    path seg;
    seg.v.push_back(sys.t0);
    add_leg(seg, endp);
    path acc0;
    acc0.v.push_back(sys.t0);
    auto fp_end = fp_plus(zero, seg, sys.values);
    out.push_back({seg, zero, -1, acc0});
    out.push_back({arcp, fp_end, -1, seg});
    out.push_back({arcm, fp_end, -1, seg});
  };
  attach_side(have_a, a, true);
  attach_side(have_b, b, false);
  return out;
}

// Modified variant: the entry path to the distinguished value plus the
// full nu circle around it. The closed nu disk is modeled by its boundary
// circle, which can only overestimate the intrinsic diameter.
std::vector<cover_arc> sigma_modified(const marked_system& sys, int l,
                                      const config& cfg) {
  std::vector<double> zero(sys.mu(), 0.0);
  const path& ent = sys.paths.entries[l];
  complex E = ent.end();
  double thE = std::arg(E - sys.values[l]);
  path circ = arc_path(sys.values[l], sys.nu, thE, thE + kTau);
  path acc0;
  acc0.v.push_back(sys.t0);
  std::vector<cover_arc> out;
  out.push_back({ent, zero, -1, acc0});
  out.push_back({circ, fp_plus(zero, ent, sys.values), -1, ent});
  return out;
}

void finish_K(lifted_tree_set& K, const marked_system& sys,
              const config& cfg) {
  int mu = sys.mu();
  K.diameter_kprime = cover_graph::build(K.loops, sys.values).diameter();
  std::vector<cover_arc> all = K.loops;
  all.insert(all.end(), K.sigma.begin(), K.sigma.end());
  K.diameter_k = cover_graph::build(all, sys.values).diameter();
  K.clearance = arcs_clearance(all, sys.values);
  if (!(K.diameter_kprime < 19.0 * mu))
    fail(errc::diameter_violation, "lifted tree exceeds its diameter bound");
  if (!(K.diameter_k < 36.0 * mu))
    fail(errc::diameter_violation, "full set exceeds its diameter bound");
  if (K.clearance < sys.nu * (1.0 - 1e-9))
    fail(errc::clearance_violation,
         "set material dips below nu clearance of a critical value");
}

}  // namespace

lifted_tree_set build_K(const marked_system& sys, const cycle& oval,
                        const config& cfg) {
  if (std::abs(oval.t - sys.t0) > 1e-9)
    fail(errc::bad_argument, "root oval must live on the base fiber");
  if (std::abs(sys.t0.imag()) > 1e-9)
    fail(errc::config_violation, "the sigma segment needs a real base point");
  int mu = sys.mu();

  std::vector<int> root_adj(mu);
  for (int j = 0; j < mu; ++j) {
    root_adj[j] = intersection_index(sys.H, oval, sys.deltas[j], cfg);
    if (std::abs(root_adj[j]) > 2)
      fail(errc::audit_failed,
           "oval pairing with a marked cycle lies outside {0, +-1, +-2}");
  }
  Eigen::VectorXi v_root = homology_coordinates(sys, oval, cfg);
  for (int j = 0; j < mu; ++j) {
    int mv = 0;
    for (int i = 0; i < mu; ++i) mv += v_root(i) * sys.intersection(i, j);
    if (mv != root_adj[j])
      fail(errc::audit_failed,
           "oval pairings disagree with the pairing of its class");
  }

  std::vector<int> parent, depth;
  bfs_tree(sys.intersection, root_adj, -1, parent, depth);

  Eigen::VectorXcd q_root(mu);
  for (int i = 0; i < mu; ++i)
    q_root(i) =
        integrate_form(sys.H, oval, sys.forms[i], cfg, cfg.tol.quadrature);

  lifted_tree_set K = lift_tree(sys, parent, depth, v_root, oval, q_root,
                                false, -1, cfg);
  K.sigma = sigma_standard(sys, cfg);
  finish_K(K, sys, cfg);
  return K;
}

lifted_tree_set build_K_modified(const marked_system& sys, int l,
                                 const config& cfg) {
  int mu = sys.mu();
  if (l < 0 || l >= mu)
    fail(errc::bad_argument, "distinguished cycle index out of range");

  std::vector<int> parent, depth;
  bfs_tree(sys.intersection, {}, l, parent, depth);

  Eigen::VectorXi e_l = Eigen::VectorXi::Zero(mu);
  e_l(l) = 1;
  lifted_tree_set K = lift_tree(sys, parent, depth, e_l, sys.deltas[l],
                                sys.period.col(l), true, l, cfg);
  K.sigma = sigma_modified(sys, l, cfg);
  finish_K(K, sys, cfg);
  return K;
}

infinity_report monodromy_at_infinity(const poly2& H, const one_form& omega,
                                      double R, const cycle& family,
                                      const config& cfg) {
  if (H.degree() < 3) fail(errc::degree_too_low, "need degree at least 3");
  int n = H.degree() - 1;
  if (R < 3.0)
    fail(errc::r_too_small, "the circle at infinity needs radius >= 3");
  auto pts = critical_points(H, cfg);
  double vmax = 0;
  for (const auto& p : pts) vmax = std::max(vmax, std::abs(p.value));
  if (R <= vmax + 0.05)
    fail(errc::r_too_small,
         "the circle must enclose the critical values with margin");

  // Reach the big circle along the straight segment whose exit angle, from a
  // fixed grid starting at the base argument, keeps the largest clearance to
  // the critical values (the base ray itself may graze one).
  double base_ang =
      std::arg(family.t == complex(0) ? complex(1) : family.t);
  double ang0 = base_ang;
  double best_clr = -1.0;
  for (int g = 0; g < 64; ++g) {
    double th = base_ang + kTau * double(g) / 64.0;
    path leg = segment_path(
        family.t, std::polar(R, th),
        std::max(1, int(std::ceil(std::abs(std::polar(R, th) - family.t) /
                                  0.25))));
    double clr = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) clr = std::min(clr, leg.distance_to(p.value));
    if (clr > best_clr) {
      best_clr = clr;
      ang0 = th;
    }
  }
  path circle = arc_path(0.0, R, ang0, ang0 + kTau);
  cycle cur = family;
  if (std::abs(cur.t - circle.v.front()) > 1e-12) {
    path leg = segment_path(cur.t, circle.v.front(),
                            std::max(1, int(std::ceil(
                                         std::abs(circle.v.front() - cur.t) /
                                         0.25))));
    if (best_clr < 1e-3)
      fail(errc::clearance_violation,
           "every approach to the circle grazes a critical value");
    cur = transport_cycle(H, cur, leg, cfg);
  }

  auto forms = standard_forms(n);
  auto period_vec = [&](const cycle& c) {
    Eigen::VectorXcd q(int(forms.size()) + 1);
    for (size_t i = 0; i < forms.size(); ++i)
      q(int(i)) = integrate_form(H, c, forms[i], cfg, cfg.tol.quadrature);
    q(int(forms.size())) = integrate_form(H, c, omega, cfg, cfg.tol.quadrature);
    return q;
  };
  Eigen::VectorXcd q0 = period_vec(cur);
  double scale = std::max(q0.lpNorm<Eigen::Infinity>(), 1e-12);

  infinity_report rep;
  for (int k = 1; k <= n + 1; ++k) {
    cur = transport_cycle(H, cur, circle, cfg);
    Eigen::VectorXcd qk = period_vec(cur);
    rep.omega_periods.push_back(qk(int(forms.size())));
    double drift = (qk - q0).lpNorm<Eigen::Infinity>() / scale;
    rep.drifts.push_back(drift);
    if (drift <= cfg.tol.period_match) {
      rep.observed_order = k;
      rep.drift = drift;
      rep.divides_n_plus_1 = (n + 1) % k == 0;
      return rep;
    }
  }
  std::string detail = "period vector did not return after n+1 circuits "
                       "around infinity; drifts:";
  for (double d : rep.drifts) detail += " " + std::to_string(d);
  fail(errc::audit_failed, detail);
}

}  // namespace abelint
