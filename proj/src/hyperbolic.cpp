#include "wparc/hyperbolic.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace wparc {

namespace {

constexpr double kDetTol = 1e-14;

double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace

double BoundaryPoint::value() const {
  if (infinite_) throw std::domain_error("BoundaryPoint: value() on the point at infinity");
  return value_;
}

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p) {
  if (p.is_infinity()) return os << "inf";
  return os << p.value();
}

MoebiusMap::MoebiusMap(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  if (!(det() > kDetTol)) throw std::domain_error("MoebiusMap: determinant must be positive");
}

MoebiusMap MoebiusMap::axis_translation(double t) {
  return MoebiusMap(std::exp(t / 2.0), 0.0, 0.0, std::exp(-t / 2.0));
}

MoebiusMap MoebiusMap::to_zero_infinity(const BoundaryPoint& s1, const BoundaryPoint& s2) {
  if (s1 == s2) throw std::domain_error("to_zero_infinity: endpoints coincide");
  if (s2.is_infinity()) return MoebiusMap(1.0, -s1.value(), 0.0, 1.0);
  if (s1.is_infinity()) return MoebiusMap(0.0, 1.0, -1.0, s2.value());
  const double u = s1.value(), v = s2.value();
  // z -> (z - u)/(z - v), sign-adjusted so the determinant is positive.
  if (u > v) return MoebiusMap(1.0, -u, 1.0, -v);
  return MoebiusMap(-1.0, u, 1.0, -v);
}

MoebiusMap MoebiusMap::translation_along(const BoundaryPoint& s1, const BoundaryPoint& s2,
                                         double t) {
  const MoebiusMap n = to_zero_infinity(s1, s2);
  return n.inverse() * axis_translation(t) * n;
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g) {
  return MoebiusMap(f.a_ * g.a_ + f.b_ * g.c_, f.a_ * g.b_ + f.b_ * g.d_,
                    f.c_ * g.a_ + f.d_ * g.c_, f.c_ * g.b_ + f.d_ * g.d_);
}

BoundaryPoint MoebiusMap::operator()(const BoundaryPoint& p) const {
  if (p.is_infinity()) {
    if (c_ == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint(a_ / c_);
  }
  const double x = p.value();
  const double den = c_ * x + d_;
  if (den == 0.0) return BoundaryPoint::infinity();
  return BoundaryPoint((a_ * x + b_) / den);
}

std::complex<double> MoebiusMap::operator()(const std::complex<double>& z) const {
  return (a_ * z + b_) / (c_ * z + d_);
}

std::complex<double> MoebiusMap::derivative(const std::complex<double>& z) const {
  const std::complex<double> den = c_ * z + d_;
  return det() / (den * den);
}

PlaneGeodesic::PlaneGeodesic(const BoundaryPoint& a, const BoundaryPoint& b) : e1(a), e2(b) {
  if (a == b) throw std::domain_error("PlaneGeodesic: endpoints must be distinct");
}

double PlaneGeodesic::center() const {
  if (is_vertical()) throw std::domain_error("PlaneGeodesic: vertical line has no center");
  return 0.5 * (e1.value() + e2.value());
}

double PlaneGeodesic::radius() const {
  if (is_vertical()) throw std::domain_error("PlaneGeodesic: vertical line has no radius");
  return 0.5 * std::abs(e1.value() - e2.value());
}

double PlaneGeodesic::line_x() const {
  if (!is_vertical()) throw std::domain_error("PlaneGeodesic: not a vertical line");
  return e1.is_infinity() ? e2.value() : e1.value();
}

PlaneGeodesic transform(const MoebiusMap& m, const PlaneGeodesic& g) {
  return PlaneGeodesic(m(g.e1), m(g.e2));
}

bool cyclically_ordered(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c) {
  if (a == b || b == c || c == a) return false;
  if (a.is_infinity()) return b.value() < c.value();
  if (b.is_infinity()) return c.value() < a.value();
  if (c.is_infinity()) return a.value() < b.value();
  const double x = a.value(), y = b.value(), z = c.value();
  return (y - x) * (z - y) * (z - x) > 0.0;
}

double cross_ratio(const BoundaryPoint& p, const BoundaryPoint& q, const BoundaryPoint& r,
                   const BoundaryPoint& s) {
  const BoundaryPoint pts[4] = {p, q, r, s};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pts[i] == pts[j]) throw std::domain_error("cross_ratio: points must be pairwise distinct");

  if (p.is_infinity()) return (q.value() - s.value()) / (q.value() - r.value());
  if (q.is_infinity()) return (p.value() - r.value()) / (p.value() - s.value());
  if (r.is_infinity()) return (q.value() - s.value()) / (p.value() - s.value());
  if (s.is_infinity()) return (p.value() - r.value()) / (q.value() - r.value());
  return (p.value() - r.value()) * (q.value() - s.value()) /
         ((p.value() - s.value()) * (q.value() - r.value()));
}

double distance_from_cross_ratio(double cr) {
  if (cr > 0.0) throw std::domain_error("distance_from_cross_ratio: requires cr <= 0");
  return std::acosh(1.0 - 2.0 * cr);
}

double angle_from_cross_ratio(double cr) {
  if (cr < 0.0 || cr > 1.0) throw std::domain_error("angle_from_cross_ratio: requires cr in [0,1]");
  return std::acos(clamp_unit(2.0 * cr - 1.0));
}

double distance(const std::complex<double>& z, const std::complex<double>& w) {
  const double num = std::norm(z - w);
  const double den = 2.0 * z.imag() * w.imag();
  if (den <= 0.0) throw std::domain_error("distance: points must lie in the upper half-plane");
  return std::acosh(1.0 + num / den);
}

bool on_geodesic(const std::complex<double>& z, const PlaneGeodesic& g, double tol) {
  if (g.is_vertical()) return std::abs(z.real() - g.line_x()) <= tol;
  return std::abs(std::abs(z - std::complex<double>(g.center(), 0.0)) - g.radius()) <= tol;
}

std::complex<double> tangent_at(const PlaneGeodesic& g, const std::complex<double>& z) {
  if (g.is_vertical()) {
    const bool up = g.e2.is_infinity();
    return std::complex<double>(0.0, up ? 1.0 : -1.0);
  }
  const std::complex<double> radial = z - std::complex<double>(g.center(), 0.0);
  // -i * radial points towards the right endpoint c + rho.
  std::complex<double> t = std::complex<double>(0.0, -1.0) * radial;
  const bool towards_right = g.e2.value() > g.e1.value();
  if (!towards_right) t = -t;
  return t / std::abs(t);
}

double angle_between_directions(const std::complex<double>& t1, const std::complex<double>& t2) {
  const double dot = (t1.real() * t2.real() + t1.imag() * t2.imag()) / (std::abs(t1) * std::abs(t2));
  return std::acos(clamp_unit(dot));
}

PlaneGeodesic geodesic_through(const std::complex<double>& z, const std::complex<double>& dir) {
  if (std::abs(dir) == 0.0) throw std::domain_error("geodesic_through: zero direction");
  const double w1 = dir.real(), w2 = dir.imag();
  if (std::abs(w1) < 1e-15 * std::abs(w2)) {
    // Vertical line.
    if (w2 > 0.0) return PlaneGeodesic(BoundaryPoint(z.real()), BoundaryPoint::infinity());
    return PlaneGeodesic(BoundaryPoint::infinity(), BoundaryPoint(z.real()));
  }
  const double c = z.real() + z.imag() * w2 / w1;
  const double rho = std::abs(z - std::complex<double>(c, 0.0));
  // Tangent towards c + rho at z is (y, c - x); pick the forward endpoint.
  const double forward_dot = z.imag() * w1 + (c - z.real()) * w2;
  if (forward_dot > 0.0) return PlaneGeodesic(BoundaryPoint(c - rho), BoundaryPoint(c + rho));
  return PlaneGeodesic(BoundaryPoint(c + rho), BoundaryPoint(c - rho));
}

PlaneGeodesic geodesic_between(const std::complex<double>& z1, const std::complex<double>& z2) {
  if (std::abs(z1 - z2) == 0.0) throw std::domain_error("geodesic_between: coincident points");
  if (std::abs(z1.real() - z2.real()) < 1e-14 * (1.0 + std::abs(z1))) {
    if (z2.imag() > z1.imag())
      return PlaneGeodesic(BoundaryPoint(z1.real()), BoundaryPoint::infinity());
    return PlaneGeodesic(BoundaryPoint::infinity(), BoundaryPoint(z1.real()));
  }
  // Center on the real axis equidistant (Euclidean) from z1 and z2.
  const double c =
      (std::norm(z2) - std::norm(z1)) / (2.0 * (z2.real() - z1.real()));
  const double rho = std::abs(z1 - std::complex<double>(c, 0.0));
  const PlaneGeodesic g(BoundaryPoint(c - rho), BoundaryPoint(c + rho));
  const std::complex<double> t = tangent_at(g, z1);
  const std::complex<double> towards = z2 - z1;
  if (t.real() * towards.real() + t.imag() * towards.imag() >= 0.0) return g;
  return g.reversed();
}

std::complex<double> intersect(const PlaneGeodesic& g1, const PlaneGeodesic& g2) {
  if (g1.is_vertical() && g2.is_vertical())
    throw std::domain_error("intersect: parallel vertical geodesics");
  if (g1.is_vertical() || g2.is_vertical()) {
    const PlaneGeodesic& v = g1.is_vertical() ? g1 : g2;
    const PlaneGeodesic& c = g1.is_vertical() ? g2 : g1;
    const double dx = v.line_x() - c.center();
    const double h2 = c.radius() * c.radius() - dx * dx;
    if (h2 <= 0.0) throw std::domain_error("intersect: geodesics do not meet");
    return std::complex<double>(v.line_x(), std::sqrt(h2));
  }
  const double c1 = g1.center(), r1 = g1.radius();
  const double c2 = g2.center(), r2 = g2.radius();
  if (c1 == c2) throw std::domain_error("intersect: concentric geodesics");
  const double x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2.0 * (c2 - c1));
  const double y2 = r1 * r1 - (x - c1) * (x - c1);
  if (y2 <= 0.0) throw std::domain_error("intersect: geodesics do not meet");
  return std::complex<double>(x, std::sqrt(y2));
}

std::complex<double> project_to_geodesic(const PlaneGeodesic& g, const std::complex<double>& z) {
  const MoebiusMap m = MoebiusMap::to_zero_infinity(g.e1, g.e2);
  const std::complex<double> w = m(z);
  const std::complex<double> proj(0.0, std::abs(w));
  return m.inverse()(proj);
}

std::complex<double> point_at_distance(const PlaneGeodesic& g, const std::complex<double>& z0,
                                       double s) {
  const MoebiusMap m = MoebiusMap::to_zero_infinity(g.e1, g.e2);
  const std::complex<double> w = m(z0);
  return m.inverse()(std::complex<double>(0.0, std::abs(w) * std::exp(s)));
}

PlaneGeodesic perpendicular_at(const PlaneGeodesic& g, const std::complex<double>& z0) {
  const MoebiusMap m = MoebiusMap::to_zero_infinity(g.e1, g.e2);
  const double y = std::abs(m(z0));
  const MoebiusMap inv = m.inverse();
  return PlaneGeodesic(inv(BoundaryPoint(-y)), inv(BoundaryPoint(y)));
}

CommonPerpendicular common_perpendicular(const PlaneGeodesic& g1, const PlaneGeodesic& g2) {
  const MoebiusMap m = MoebiusMap::to_zero_infinity(g1.e1, g1.e2);
  const BoundaryPoint q1 = m(g2.e1), q2 = m(g2.e2);
  if (q1.is_infinity() || q2.is_infinity())
    throw std::domain_error("common_perpendicular: geodesics share an endpoint");
  const double y1 = q1.value(), y2 = q2.value();
  if (y1 * y2 <= 0.0)
    throw std::domain_error("common_perpendicular: geodesics intersect or are asymptotic");
  const double rho = std::sqrt(y1 * y2);
  // In the model the perpendicular is |z| = rho; its feet are i*rho on the
  // axis and the top of the image circle.
  const double sign = y1 > 0.0 ? 1.0 : -1.0;
  const PlaneGeodesic model_perp(BoundaryPoint(-sign * rho), BoundaryPoint(sign * rho));
  const std::complex<double> foot1_model(0.0, rho);
  const PlaneGeodesic model_g2(q1, q2);
  const std::complex<double> foot2_model = intersect(model_perp, model_g2);
  const MoebiusMap inv = m.inverse();
  CommonPerpendicular out{transform(inv, model_perp), distance(foot1_model, foot2_model),
                          inv(foot1_model), inv(foot2_model)};
  return out;
}

PlaneGeodesic midcurve(const PlaneGeodesic& g1, const PlaneGeodesic& g2) {
  const CommonPerpendicular cp = common_perpendicular(g1, g2);
  const double half = 0.5 * cp.length;
  std::complex<double> mid = point_at_distance(cp.geodesic, cp.foot1, half);
  if (distance(mid, cp.foot2) > half * (1.0 + 1e-9) + 1e-12)
    mid = point_at_distance(cp.geodesic, cp.foot1, -half);
  return perpendicular_at(cp.geodesic, mid);
}

double triangle_side_from_angles(double alpha, double beta, double gamma) {
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0 && alpha < kPi && beta < kPi && gamma < kPi))
    throw std::domain_error("triangle_side_from_angles: angles must lie in (0, pi)");
  if (!(alpha + beta + gamma < kPi))
    throw std::domain_error("triangle_side_from_angles: angle sum must be < pi");
  return std::acosh((std::cos(alpha) * std::cos(beta) + std::cos(gamma)) /
                    (std::sin(alpha) * std::sin(beta)));
}

double triangle_angle_from_sides(double ab, double ac, double bc) {
  if (!(ab > 0.0 && ac > 0.0 && bc > 0.0))
    throw std::domain_error("triangle_angle_from_sides: sides must be positive");
  const double c = (std::cosh(ab) * std::cosh(ac) - std::cosh(bc)) /
                   (std::sinh(ab) * std::sinh(ac));
  if (c < -1.0 || c > 1.0)
    throw std::domain_error("triangle_angle_from_sides: sides violate the triangle inequality");
  return std::acos(c);
}

double triangle_sine_law_residual(double alpha, double beta, double gamma, double bc, double ac,
                                  double ab) {
  const double r1 = std::sin(alpha) * std::sinh(ac) - std::sin(beta) * std::sinh(bc);
  const double r2 = std::sin(beta) * std::sinh(ab) - std::sin(gamma) * std::sinh(ac);
  const double r3 = std::sin(gamma) * std::sinh(bc) - std::sin(alpha) * std::sinh(ab);
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

double quad_three_right_angle(double ab, double bc) {
  if (!(ab > 0.0 && bc > 0.0)) throw std::domain_error("quad_three_right_angle: sides positive");
  const double p = std::sinh(ab) * std::sinh(bc);
  if (p > 1.0)
    throw std::domain_error("quad_three_right_angle: sinh(AB) sinh(BC) must be <= 1");
  return std::acos(p);
}

double quad_two_right_side(double alpha, double beta, double cd) {
  if (!(cd > 0.0 && alpha > 0.0 && beta > 0.0 && alpha < kPi && beta < kPi))
    throw std::domain_error("quad_two_right_side: invalid data");
  const double v = (std::cos(alpha) * std::cos(beta) + std::cosh(cd)) /
                   (std::sin(alpha) * std::sin(beta));
  if (v < 1.0) throw std::domain_error("quad_two_right_side: data not realizable");
  return std::acosh(v);
}

double pentagon_side(double ab, double cd, double gamma) {
  if (!(ab > 0.0 && cd > 0.0)) throw std::domain_error("pentagon_side: sides must be positive");
  if (!(gamma > 0.0 && gamma < kPi)) throw std::domain_error("pentagon_side: angle out of range");
  const double v = (std::cosh(ab) * std::cosh(cd) + std::cos(gamma)) /
                   (std::sinh(ab) * std::sinh(cd));
  if (v < 1.0) throw std::domain_error("pentagon_side: data not realizable");
  return std::acosh(v);
}

double hexagon_side(double ab, double cd, double ef) {
  if (!(ab > 0.0 && cd > 0.0 && ef > 0.0))
    throw std::domain_error("hexagon_side: sides must be positive");
  return std::acosh((std::cosh(ab) * std::cosh(cd) + std::cosh(ef)) /
                    (std::sinh(ab) * std::sinh(cd)));
}

DevelopedHexagon develop_hexagon(double a0, double a1, double a2) {
  if (!(a0 > 0.0 && a1 > 0.0 && a2 > 0.0))
    throw std::domain_error("develop_hexagon: side lengths must be positive");

  // Boundary geodesics: B2 the unit circle through z0 = i, B0 the circle of
  // radius E = e^{a0} through y0 = iE, and B1 a circle (u, v) in between with
  // prescribed distances a1 to B0 and a2 to B2.  The distance law
  // sinh^2(d/2) = |cr| turns those two conditions into linear equations for
  // v - u and uv.
  const double E = std::exp(a0);
  const double K = 2.0 * std::sinh(a2 / 2.0) * std::sinh(a2 / 2.0);
  const double M = 2.0 * E * std::sinh(a1 / 2.0) * std::sinh(a1 / 2.0);
  const double sigma = (E * E - 1.0) / (1.0 + K + E + M);
  const double prod = 1.0 + (1.0 + K) * sigma;
  const double v = 0.5 * (sigma + std::sqrt(sigma * sigma + 4.0 * prod));
  const double u = v - sigma;

  const PlaneGeodesic B2{BoundaryPoint(1.0), BoundaryPoint(-1.0)};
  const PlaneGeodesic B0{BoundaryPoint(-E), BoundaryPoint(E)};
  const PlaneGeodesic B1{BoundaryPoint(v), BoundaryPoint(u)};

  const std::complex<double> z0(0.0, 1.0);
  const std::complex<double> y0(0.0, E);
  const CommonPerpendicular p01 = common_perpendicular(B0, B1);
  const CommonPerpendicular p12 = common_perpendicular(B1, B2);
  const std::complex<double> z1 = p01.foot1, y1 = p01.foot2;
  const std::complex<double> z2 = p12.foot1, y2 = p12.foot2;

  DevelopedHexagon hex{
      {z0, y0, z1, y1, z2, y2},
      {PlaneGeodesic(BoundaryPoint(0.0), BoundaryPoint::infinity()),
       B0, p01.geodesic, B1, p12.geodesic, B2},
      {},
      {B0, B1, B2}};
  for (int k = 0; k < 6; ++k)
    hex.side_lengths[k] = distance(hex.vertices[k], hex.vertices[(k + 1) % 6]);
  return hex;
}

bool hexagon_spine_point(const DevelopedHexagon& hex, HexagonSpinePoint* out) {
  try {
    const PlaneGeodesic m01 = midcurve(hex.boundary[0], hex.boundary[1]);
    const PlaneGeodesic m12 = midcurve(hex.boundary[1], hex.boundary[2]);
    const std::complex<double> u = intersect(m01, m12);
    HexagonSpinePoint sp;
    sp.center = u;
    for (int m = 0; m < 3; ++m) {
      sp.foot[m] = project_to_geodesic(hex.boundary[m], u);
      sp.arc_foot[m] = project_to_geodesic(hex.sides[2 * m], u);
    }
    if (out) *out = sp;
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

}  // namespace wparc
