#include "wparc/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wparc/hyperbolic.hpp"

namespace wparc {

void check_positive_lengths(const TriangulatedSurface& s, const ArcLengthVector& a) {
  if (static_cast<int>(a.size()) != s.arc_count())
    throw std::invalid_argument("length vector size does not match arc count");
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] > 0.0) || !std::isfinite(a[i]))
      throw std::invalid_argument("arc length " + std::to_string(i) + " must be positive");
}

std::vector<double> s_lengths(const ArcLengthVector& a) {
  std::vector<double> s(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0)) throw std::invalid_argument("s_lengths: lengths must be positive");
    s[i] = std::cosh(a[i] / 2.0);
  }
  return s;
}

std::complex<double> HexagonGeometry::gamma(int m) const {
  const double c = cos_gamma[m];
  if (c > 1.0) return std::complex<double>(0.0, std::acosh(c));
  if (c < -1.0) return std::complex<double>(kPi, -std::acosh(-c));
  return std::complex<double>(std::acos(c), 0.0);
}

std::vector<HexagonGeometry> hexagon_geometry(const TriangulatedSurface& s,
                                              const ArcLengthVector& a) {
  check_positive_lengths(s, a);
  std::vector<HexagonGeometry> out;
  out.reserve(s.hexagons().size());
  for (const Hexagon& h : s.hexagons()) {
    double al[3], S[3];
    for (int m = 0; m < 3; ++m) {
      al[m] = a[h.sides[m].arc];
      const double c = std::cosh(al[m] / 2.0);
      S[m] = c * c;
    }
    HexagonGeometry g;
    for (int m = 0; m < 3; ++m) {
      g.b[m] = hexagon_side(al[m], al[(m + 1) % 3], al[(m + 2) % 3]);
      const int j = (m + 1) % 3, k = (m + 2) % 3;
      const double num = S[j] + S[k] - S[m];
      g.w[m] = std::asinh(num / (2.0 * std::sqrt(S[j] * S[k] * (S[m] - 1.0))));
      g.cos_gamma[m] = num / (2.0 * std::sqrt(S[j] * S[k]));
    }
    out.push_back(g);
  }
  return out;
}

namespace {

BoundaryGeometry walk_geometry(const TriangulatedSurface& s,
                               const std::vector<std::array<double, 3>>& slot_segment) {
  BoundaryGeometry geo;
  geo.cycles = s.boundary_cycles();
  geo.cycle_of_foot.assign(2 * s.arc_count(), -1);
  geo.position_of_foot.assign(2 * s.arc_count(), 0.0);
  for (size_t c = 0; c < geo.cycles.size(); ++c) {
    const BoundaryCycle& cyc = geo.cycles[c];
    std::vector<double> pos(cyc.feet.size()), seg(cyc.feet.size());
    double run = 0.0;
    for (size_t k = 0; k < cyc.feet.size(); ++k) {
      pos[k] = run;
      seg[k] = slot_segment[cyc.segment_hex[k]][cyc.segment_slot[k]];
      run += seg[k];
      const OrientedArc& f = cyc.feet[k];
      geo.cycle_of_foot[2 * f.arc + (f.forward ? 0 : 1)] = static_cast<int>(c);
      geo.position_of_foot[2 * f.arc + (f.forward ? 0 : 1)] = pos[k];
    }
    geo.lengths.push_back(run);
    geo.foot_position.push_back(std::move(pos));
    geo.segment.push_back(std::move(seg));
  }
  return geo;
}

}  // namespace

double BoundaryGeometry::total_length() const {
  double t = 0.0;
  for (double p : lengths) t += p;
  return t;
}

double BoundaryGeometry::circular_distance(const OrientedArc& x, const OrientedArc& y) const {
  const int cx = component_of(x), cy = component_of(y);
  if (cx != cy || cx < 0)
    throw std::invalid_argument("circular_distance: feet must lie on one boundary component");
  if (x == y) throw std::invalid_argument("circular_distance: feet must be distinct");
  const double p = lengths[cx];
  double d = position_of_foot[2 * y.arc + (y.forward ? 0 : 1)] -
             position_of_foot[2 * x.arc + (x.forward ? 0 : 1)];
  if (d < 0.0) d += p;
  return d;
}

BoundaryGeometry boundary_geometry(const TriangulatedSurface& s, const ArcLengthVector& a) {
  const std::vector<HexagonGeometry> hexes = hexagon_geometry(s, a);
  std::vector<std::array<double, 3>> seg(hexes.size());
  // Segment leaving the foot of side m lies opposite arc side m+2.
  for (size_t h = 0; h < hexes.size(); ++h)
    for (int m = 0; m < 3; ++m) seg[h][m] = hexes[h].b[m];
  return walk_geometry(s, seg);
}

BoundaryGeometry decorated_boundary_geometry(const TriangulatedSurface& s,
                                             const LambdaVector& lambda) {
  if (static_cast<int>(lambda.size()) != s.arc_count())
    throw std::invalid_argument("lambda vector size does not match arc count");
  for (double l : lambda)
    if (!(l > 0.0)) throw std::invalid_argument("lambda lengths must be positive");
  std::vector<std::array<double, 3>> seg(s.hexagons().size());
  for (size_t h = 0; h < seg.size(); ++h) {
    const Hexagon& hex = s.hexagons()[h];
    for (int m = 0; m < 3; ++m) {
      const double lm = lambda[hex.sides[m].arc];
      const double lj = lambda[hex.side(m + 1).arc];
      const double lk = lambda[hex.side(m + 2).arc];
      // Horocyclic arc between sides m and m+1 is twice the h-length of the
      // opposite side: 2 h_{t,m+2} = 2 lambda_{m+2} / (lambda_m lambda_{m+1}).
      seg[h][m] = 2.0 * lk / (lm * lj);
    }
  }
  return walk_geometry(s, seg);
}

WidthVector widths(const TriangulatedSurface& s, const ArcLengthVector& a, double tol) {
  const std::vector<HexagonGeometry> hexes = hexagon_geometry(s, a);
  WidthVector wv;
  wv.total.assign(s.arc_count(), 0.0);
  wv.halves.resize(hexes.size());
  for (size_t h = 0; h < hexes.size(); ++h) {
    const HexagonGeometry& g = hexes[h];
    for (int m = 0; m < 3; ++m) {
      // d-based combination: the boundary sides adjacent to arc side m are
      // slots m and m+2, and the opposite one is slot m+1.
      const double from_b = 0.5 * (g.b[m] + g.b[(m + 2) % 3] - g.b[(m + 1) % 3]);
      const double from_sinh = g.w[m];
      if (std::abs(from_b - from_sinh) > tol) {
        std::ostringstream msg;
        msg << "widths: internal consistency failure in hexagon " << h << " slot " << m << ": "
            << from_b << " vs " << from_sinh;
        throw std::runtime_error(msg.str());
      }
      wv.halves[h][m] = from_sinh;
      wv.total[s.hexagons()[h].sides[m].arc] += from_sinh;
    }
  }
  return wv;
}

FlipResult flip_length(const TriangulatedSurface& s, const ArcLengthVector& a, int arc) {
  check_positive_lengths(s, a);
  const SideRef r1 = s.find_side(OrientedArc(arc, true));
  const SideRef r2 = s.find_side(OrientedArc(arc, false));
  if (!r1.valid() || !r2.valid())
    throw std::invalid_argument("flip_length: arc not present in both directions");
  if (r1.hexagon == r2.hexagon)
    throw std::invalid_argument("flip_length: self-glued arc cannot flip");

  const Hexagon& t1 = s.hexagons()[r1.hexagon];
  const Hexagon& t2 = s.hexagons()[r2.hexagon];
  const double ae = a[arc];
  const double aA = a[t1.side(r1.slot + 1).arc], aB = a[t1.side(r1.slot + 2).arc];
  const double aC = a[t2.side(r2.slot + 1).arc], aD = a[t2.side(r2.slot + 2).arc];

  // Develop t1 = (e, A, B) with the e-side along [i, i e^{a_e}]; its boundary
  // geodesic between sides A and B (slot 1) faces the new diagonal.  t2 =
  // (ebar, C, D) is developed the same way and glued across the e-side by the
  // half-turn z -> -e^{a_e} / z, which matches head to tail.
  const DevelopedHexagon h1 = develop_hexagon(ae, aA, aB);
  const DevelopedHexagon h2 = develop_hexagon(ae, aC, aD);
  const double E = std::exp(ae);
  const MoebiusMap glue(0.0, -E, 1.0, 0.0);

  const PlaneGeodesic side_t1 = h1.boundary[1];                  // between A and B
  const PlaneGeodesic side_t2 = transform(glue, h2.boundary[1]); // between C and D

  double new_len;
  try {
    new_len = common_perpendicular(side_t1, side_t2).length;
  } catch (const std::domain_error& e) {
    throw std::runtime_error(std::string("flip_length: degenerate gluing: ") + e.what());
  }

  FlipResult out{flip_combinatorial(s, arc), a};
  out.lengths[arc] = new_len;
  return out;
}

SpineSearchResult find_spine_triangulation(const TriangulatedSurface& s, const ArcLengthVector& a,
                                           double tol, int max_iterations) {
  SpineSearchResult res{s, a, {}};
  std::vector<double> p0 = boundary_geometry(s, a).lengths;
  std::sort(p0.begin(), p0.end());
  for (int iter = 0; iter < max_iterations; ++iter) {
    const WidthVector wv = widths(res.surface, res.lengths);
    int worst = -1;
    double worst_w = -tol;
    for (int i = 0; i < res.surface.arc_count(); ++i)
      if (wv.total[i] < worst_w) {
        worst_w = wv.total[i];
        worst = i;
      }
    if (worst < 0) return res;

    const FlipResult f = flip_length(res.surface, res.lengths, worst);
    res.surface = f.surface;
    res.lengths = f.lengths;
    res.flips.push_back(worst);

    // Boundary lengths are intrinsic; drift beyond tolerance means trouble.
    // (Cycle enumeration order may change across a flip, so compare sorted.)
    std::vector<double> p = boundary_geometry(res.surface, res.lengths).lengths;
    std::sort(p.begin(), p.end());
    double drift = 0.0;
    for (size_t c = 0; c < p.size(); ++c) drift = std::max(drift, std::abs(p[c] - p0[c]));
    if (drift > 1e-6)
      throw std::runtime_error("find_spine_triangulation: boundary length drift " +
                               std::to_string(drift));
  }
  std::ostringstream msg;
  msg << "find_spine_triangulation: iteration cap " << max_iterations << " exceeded; flip trace:";
  for (int f : res.flips) msg << " " << f;
  throw std::runtime_error(msg.str());
}

ArcLengthVector invert_widths(const TriangulatedSurface& s, const std::vector<double>& w_target,
                              const ArcLengthVector& initial_guess, NewtonOptions opts) {
  const int n = s.arc_count();
  if (static_cast<int>(w_target.size()) != n)
    throw std::invalid_argument("invert_widths: target size mismatch");
  for (double w : w_target)
    if (!(w > 0.0)) throw std::invalid_argument("invert_widths: target widths must be positive");

  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = initial_guess.at(i);

  auto eval = [&](const Eigen::VectorXd& v) {
    ArcLengthVector a(n);
    for (int i = 0; i < n; ++i) a[i] = v[i];
    const WidthVector wv = widths(s, a, 1e-6);
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) r[i] = wv.total[i] - w_target[i];
    return r;
  };

  double last_residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const Eigen::VectorXd r = eval(x);
    last_residual = r.lpNorm<Eigen::Infinity>();
    if (last_residual <= opts.residual_tol) {
      ArcLengthVector a(n);
      for (int i = 0; i < n; ++i) a[i] = x[i];
      return a;
    }
    Eigen::MatrixXd J(n, n);
    for (int j = 0; j < n; ++j) {
      const double step = opts.fd_step_scale * (1.0 + std::abs(x[j]));
      Eigen::VectorXd xp = x, xm = x;
      xp[j] += step;
      xm[j] -= step;
      if (xm[j] <= 0.0) xm[j] = x[j];  // one-sided at the positivity wall
      J.col(j) = (eval(xp) - eval(xm)) / (xp[j] - xm[j]);
    }
    const Eigen::VectorXd dx = J.fullPivLu().solve(-r);
    double t = 1.0;
    for (; t > 1.0 / 1024.0; t *= 0.5) {
      Eigen::VectorXd cand = x + t * dx;
      bool positive = true;
      for (int i = 0; i < n; ++i) positive &= cand[i] > 1e-8;
      if (!positive) continue;
      if (eval(cand).lpNorm<Eigen::Infinity>() < last_residual) {
        x = cand;
        break;
      }
    }
    if (t <= 1.0 / 1024.0)
      throw std::runtime_error("invert_widths: line search stalled, residual " +
                               std::to_string(last_residual));
  }
  throw std::runtime_error("invert_widths: no convergence, residual " +
                           std::to_string(last_residual));
}

}  // namespace wparc
