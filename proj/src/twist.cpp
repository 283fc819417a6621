#include "wparc/twist.hpp"

#include <cmath>
#include <stdexcept>

namespace wparc {

namespace {

// chi_L: the scaled side of the right twist along s1 -> s2 is the cyclic
// interval (s2, s1).
bool on_left_side(const BoundaryPoint& x, const BoundaryPoint& s1, const BoundaryPoint& s2) {
  return cyclically_ordered(s2, x, s1);
}

void check_config(const TwistConfiguration& c) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j)
      if (c.z[i] == c.z[j])
        throw std::domain_error("twist configuration: the four points must be distinct");
    if (c.z[i] == c.s1 || c.z[i] == c.s2)
      throw std::domain_error("twist configuration: a point coincides with a lift endpoint");
  }
  if (c.s1 == c.s2) throw std::domain_error("twist configuration: lift endpoints coincide");
}

}  // namespace

double cr_twist_derivative(const TwistConfiguration& c) {
  check_config(c);
  static constexpr int sigma[4] = {2, 3, 0, 1};
  static constexpr int tau[4] = {3, 2, 1, 0};
  double sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    if (!on_left_side(c.z[j], c.s1, c.s2)) continue;
    sum += cross_ratio(c.z[sigma[j]], c.s1, c.s2, c.z[j]) -
           cross_ratio(c.z[tau[j]], c.s1, c.s2, c.z[j]);
  }
  return cross_ratio(c.z[0], c.z[1], c.z[2], c.z[3]) * sum;
}

double numeric_twist_flow_derivative(const TwistConfiguration& c, TwistSide side, double step) {
  check_config(c);
  const MoebiusMap m = MoebiusMap::to_zero_infinity(c.s1, c.s2);
  const MoebiusMap minv = m.inverse();

  auto flowed = [&](const BoundaryPoint& x, double t) {
    const BoundaryPoint y = m(x);
    if (y.is_infinity()) return x;
    const bool moves = side == TwistSide::left ? y.value() < 0.0 : y.value() > 0.0;
    if (!moves) return x;
    return minv(BoundaryPoint(y.value() * std::exp(t)));
  };
  auto cr_at = [&](double t) {
    return cross_ratio(flowed(c.z[0], t), flowed(c.z[1], t), flowed(c.z[2], t),
                       flowed(c.z[3], t));
  };
  // Fourth-order stencil; the configurations can sit close to a pole of the
  // cross-ratio, where a plain central difference is too blunt.
  return (-cr_at(2.0 * step) + 8.0 * cr_at(step) - 8.0 * cr_at(-step) + cr_at(-2.0 * step)) /
         (12.0 * step);
}

double per_lift_contribution(LiftCase c, const LiftParams& p) {
  if (!(p.h > 0.0)) throw std::domain_error("per_lift_contribution: h must be positive");
  const double th = std::tanh(p.h / 2.0);
  switch (c) {
    case LiftCase::head_side:
      return std::exp(-p.d) * std::sin(p.nu) / (2.0 * th);
    case LiftCase::tail_side:
      return -std::exp(p.d) * std::sin(p.nu) / (2.0 * th);
    case LiftCase::homotopic:
      // Both angles measured with the lift oriented from the crossing towards
      // its companion (the segment homotopic to delta starts at each x_i).
      // The flow oracle fixes the prefactor at 1/2; the source statement
      // prints the bare two-cosine sum.
      return 0.5 * (std::cos(p.nu) + std::cos(p.nu2));
    case LiftCase::distant:
      if (p.alpha < 0.0 || p.alpha >= kPi)
        throw std::domain_error("per_lift_contribution: alpha must lie in [0, pi)");
      return std::cos(p.alpha) / th;
  }
  throw std::domain_error("per_lift_contribution: invalid case tag");
}

void check_scenario(const TwistScenario& s) {
  if (!(s.h > 0.0)) throw std::invalid_argument("twist scenario: h must be positive");
  for (const IntersectionDatum& it : s.items) {
    if (it.target != 1 && it.target != 2)
      throw std::invalid_argument("twist scenario: target must be 1 or 2");
    if (!(it.nu > 0.0 && it.nu < kPi))
      throw std::invalid_argument("twist scenario: nu must lie in (0, pi)");
    if (it.closed) {
      if (!(it.p > 0.0))
        throw std::invalid_argument("twist scenario: closed gamma needs a positive length p");
      if (!it.homotopic_to_delta && !(it.d >= 0.0 && it.d < it.p))
        throw std::invalid_argument("twist scenario: closed non-homotopic crossing needs d in [0,p)");
    } else {
      if (it.p != 0.0)
        throw std::invalid_argument("twist scenario: open gamma must not carry a length");
    }
  }
  for (const DistantIntersection& z : s.distant)
    if (z.alpha < 0.0 || z.alpha >= kPi)
      throw std::invalid_argument("twist scenario: distant alpha must lie in [0, pi)");
}

double coefficient_c(const IntersectionDatum& datum, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("coefficient_c: h must be positive");
  const double th = std::tanh(h / 2.0);

  if (!datum.closed) {
    if (datum.homotopic_to_delta) return 0.5 * th * std::cos(datum.nu);
    // Exceptional crossing at y_i itself: treated as just after y_i when the
    // angle exceeds pi/2, just before otherwise.
    double sgn;
    if (datum.d > 0.0)
      sgn = 1.0;
    else if (datum.d < 0.0)
      sgn = -1.0;
    else
      sgn = datum.nu > kPi / 2.0 ? 1.0 : -1.0;
    const double eps = datum.r_wind != 0 ? -1.0 : 1.0;
    return 0.5 * eps * sgn * std::exp(-eps * sgn * datum.d) * std::sin(datum.nu);
  }

  if (datum.homotopic_to_delta) {
    // Series over the lifts k != 0 plus this crossing's share of the shared
    // lift.  Both constants are pinned by the truncated per-lift sum oracle;
    // the printed coefficients differ from it by a factor of 2 in each term.
    return std::sinh(-datum.d) / (std::exp(datum.p) - 1.0) * std::sin(datum.nu) +
           0.5 * th * std::cos(datum.nu);
  }
  return std::sinh(datum.p / 2.0 - datum.d - datum.r_wind * datum.p) /
         (2.0 * std::sinh(datum.p / 2.0)) * std::sin(datum.nu);
}

double twist_derivative_distance(const TwistScenario& s) {
  check_scenario(s);
  double total = 0.0;
  for (const IntersectionDatum& it : s.items) total += coefficient_c(it, s.h);
  for (const DistantIntersection& z : s.distant) total += std::cos(z.alpha);
  return total;
}

double twist_derivative_distance_right_angles(const TwistScenario& s) {
  check_scenario(s);
  for (const IntersectionDatum& it : s.items) {
    if (it.nu != kPi / 2.0)
      throw std::invalid_argument("right-angle evaluation: every nu must equal pi/2");
    if (it.homotopic_to_delta)
      throw std::invalid_argument("right-angle evaluation: homotopic segments not allowed");
  }
  if (!s.distant.empty())
    throw std::invalid_argument("right-angle evaluation: distant intersections not allowed");
  return twist_derivative_distance(s);
}

StandardPosition::StandardPosition(double h_) : h(h_),
      gamma1{BoundaryPoint(-1.0), BoundaryPoint(1.0)},
      gamma2{BoundaryPoint(std::exp(h_)), BoundaryPoint(-std::exp(h_))},
      y1(0.0, 1.0),
      y2(0.0, std::exp(h_)) {
  if (!(h_ > 0.0)) throw std::domain_error("StandardPosition: h must be positive");
  cr = -std::sinh(h_ / 2.0) * std::sinh(h_ / 2.0);
}

TwistConfiguration StandardPosition::config(const PlaneGeodesic& lift) const {
  // (z1,z2,z3,z4) = (p,q,r,s).
  return TwistConfiguration{{gamma1.e1, gamma2.e1, gamma2.e2, gamma1.e2}, lift.e1, lift.e2};
}

namespace {

// Separation type of a lift relative to the four standard points: returns
// true when the arc cut off by the lift contains exactly the given points.
bool separates_exactly(const PlaneGeodesic& lift, const std::vector<BoundaryPoint>& inside,
                       const std::vector<BoundaryPoint>& outside) {
  for (const BoundaryPoint& x : inside)
    if (!cyclically_ordered(lift.e1, x, lift.e2) && !cyclically_ordered(lift.e2, x, lift.e1))
      return false;
  // All inside points on one side, all outside points on the other.
  const BoundaryPoint& probe = inside.front();
  const bool probe_side = cyclically_ordered(lift.e1, probe, lift.e2);
  for (const BoundaryPoint& x : inside)
    if (cyclically_ordered(lift.e1, x, lift.e2) != probe_side) return false;
  for (const BoundaryPoint& x : outside)
    if (cyclically_ordered(lift.e1, x, lift.e2) == probe_side) return false;
  return true;
}

}  // namespace

bool lift_is_case(const StandardPosition& sp, const PlaneGeodesic& lift, int target, LiftCase c) {
  const BoundaryPoint p = sp.gamma1.e1, s = sp.gamma1.e2;
  const BoundaryPoint q = sp.gamma2.e1, r = sp.gamma2.e2;
  switch (c) {
    case LiftCase::head_side:
      return target == 1 ? separates_exactly(lift, {s}, {p, q, r})
                         : separates_exactly(lift, {r}, {p, q, s});
    case LiftCase::tail_side:
      return target == 1 ? separates_exactly(lift, {p}, {s, q, r})
                         : separates_exactly(lift, {q}, {p, r, s});
    case LiftCase::homotopic:
      return separates_exactly(lift, {s, q}, {p, r});
    case LiftCase::distant:
      return separates_exactly(lift, {q, r}, {p, s});
  }
  return false;
}

void measure_homotopic_angles(const StandardPosition& sp, const PlaneGeodesic& lift, double* nu1,
                              double* nu2) {
  const std::complex<double> x1 = intersect(lift, sp.gamma1);
  const std::complex<double> x2 = intersect(lift, sp.gamma2);
  // Orient the lift from x1 towards x2 for the first angle and back for the
  // second: each crossing measures against the segment leaving it towards
  // its companion.
  PlaneGeodesic towards_x2 = lift;
  {
    const std::complex<double> t = tangent_at(lift, x1);
    const std::complex<double> dirc = x2 - x1;
    if (t.real() * dirc.real() + t.imag() * dirc.imag() < 0.0) towards_x2 = lift.reversed();
  }
  if (nu1)
    *nu1 = angle_between_directions(tangent_at(sp.gamma1, x1), tangent_at(towards_x2, x1));
  if (nu2)
    *nu2 = angle_between_directions(tangent_at(sp.gamma2, x2),
                                    tangent_at(towards_x2.reversed(), x2));
}

PlaneGeodesic construct_gamma_crossing(const StandardPosition& sp, int target, double d, double nu,
                                       LiftCase* realized) {
  if (!(nu > 0.0 && nu < kPi))
    throw std::domain_error("construct_gamma_crossing: nu must lie in (0, pi)");
  const PlaneGeodesic& gamma = target == 1 ? sp.gamma1 : sp.gamma2;
  const std::complex<double> y = target == 1 ? sp.y1 : sp.y2;
  const std::complex<double> x = point_at_distance(gamma, y, d);
  const std::complex<double> t = tangent_at(gamma, x);
  const std::complex<double> rot(std::cos(nu), std::sin(nu));

  // Prefer the rotation landing in a single-crossing case; a crossing too
  // close to the other gamma can only realize the homotopic type.
  for (const std::complex<double>& dir : {t * rot, t * std::conj(rot)}) {
    const PlaneGeodesic lift = geodesic_through(x, dir);
    for (const LiftCase c : {LiftCase::head_side, LiftCase::tail_side}) {
      if (lift_is_case(sp, lift, target, c)) {
        if (realized) *realized = c;
        return lift;
      }
    }
  }
  for (const std::complex<double>& dir : {t * rot, t * std::conj(rot)}) {
    const PlaneGeodesic lift = geodesic_through(x, dir);
    if (lift_is_case(sp, lift, target, LiftCase::homotopic)) {
      if (realized) *realized = LiftCase::homotopic;
      return lift;
    }
  }
  throw std::runtime_error("construct_gamma_crossing: no rotation lands in a recognized case");
}

PlaneGeodesic construct_homotopic_lift(const StandardPosition& sp, double d1, double d2,
                                       double* nu1, double* nu2) {
  const std::complex<double> x1 = point_at_distance(sp.gamma1, sp.y1, d1);
  const std::complex<double> x2 = point_at_distance(sp.gamma2, sp.y2, d2);
  const PlaneGeodesic lift = geodesic_between(x1, x2);
  if (!lift_is_case(sp, lift, 1, LiftCase::homotopic))
    throw std::runtime_error("construct_homotopic_lift: configuration is not homotopic-type");
  measure_homotopic_angles(sp, lift, nu1, nu2);
  return lift;
}

PlaneGeodesic construct_distant_lift(const StandardPosition& sp, double e, double alpha) {
  // delta oriented from y2 down to y1; the crossing sits at signed distance e
  // past the midpoint, i.e. at height exp(h/2 - e).
  const std::complex<double> z(0.0, std::exp(sp.h / 2.0 - e));
  const std::complex<double> towards_y1(0.0, -1.0);
  const std::complex<double> dir = towards_y1 * std::complex<double>(std::cos(alpha), -std::sin(alpha));
  const PlaneGeodesic lift = geodesic_through(z, dir);
  if (!lift_is_case(sp, lift, 0, LiftCase::distant))
    throw std::runtime_error("construct_distant_lift: configuration is not distant-type");
  return lift;
}

}  // namespace wparc
