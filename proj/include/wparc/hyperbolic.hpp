#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <vector>

// Upper half-plane kernel: extended boundary points, Moebius maps, geodesics
// by ideal endpoints, cross-ratio calculus and the explicit polygon
// constructions the rest of the library uses as oracles.
//
// Conventions, fixed once and used by every caller:
//  - The boundary circle R u {inf} carries the cyclic order of increasing
//    reals, wrapping through infinity.
//  - For two disjoint geodesics g1 = (p s) and g2 = (q r) labelled so that
//    p < s < q < r cyclically, the cross-ratio (p,q,r,s) = -sinh^2(h/2) is
//    negative and cosh(h) = 1 - 2(p,q,r,s) gives their distance.  For
//    intersecting geodesics the same labelling gives (p,q,r,s) = cos^2(e/2).

namespace wparc {

inline constexpr double kPi = 3.14159265358979323846;

// A point of the boundary circle of the half-plane: a real number or infinity.
class BoundaryPoint {
 public:
  BoundaryPoint() : value_(0.0), infinite_(false) {}
  BoundaryPoint(double v) : value_(v), infinite_(false) {}  // NOLINT(implicit)

  static BoundaryPoint infinity() {
    BoundaryPoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinity() const { return infinite_; }
  double value() const;  // throws std::domain_error when infinite

  friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator!=(const BoundaryPoint& a, const BoundaryPoint& b) { return !(a == b); }

 private:
  double value_;
  bool infinite_;
};

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p);

// Orientation-preserving isometry of the half-plane, z -> (az+b)/(cz+d)
// with ad - bc > 0.
class MoebiusMap {
 public:
  MoebiusMap(double a, double b, double c, double d);

  static MoebiusMap identity() { return MoebiusMap(1, 0, 0, 1); }
  // z -> e^t z, the hyperbolic translation of length t along (0, inf).
  static MoebiusMap axis_translation(double t);
  // The map sending s1 -> 0 and s2 -> inf (third point unconstrained).
  static MoebiusMap to_zero_infinity(const BoundaryPoint& s1, const BoundaryPoint& s2);
  // Hyperbolic translation of length t along the oriented geodesic s1 -> s2.
  static MoebiusMap translation_along(const BoundaryPoint& s1, const BoundaryPoint& s2, double t);

  double det() const { return a_ * d_ - b_ * c_; }
  MoebiusMap inverse() const;
  // Composition: (f * g)(z) = f(g(z)).
  friend MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g);

  BoundaryPoint operator()(const BoundaryPoint& p) const;
  std::complex<double> operator()(const std::complex<double>& z) const;
  // Derivative as a holomorphic map, used to push tangent directions around.
  std::complex<double> derivative(const std::complex<double>& z) const;

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

 private:
  double a_, b_, c_, d_;
};

// Geodesic of the half-plane given by its ordered ideal endpoints; the order
// encodes the orientation (from e1 towards e2).
struct PlaneGeodesic {
  BoundaryPoint e1, e2;

  PlaneGeodesic(const BoundaryPoint& a, const BoundaryPoint& b);

  bool is_vertical() const { return e1.is_infinity() || e2.is_infinity(); }
  // Euclidean center/radius of the semicircle; only valid when not vertical.
  double center() const;
  double radius() const;
  // Real coordinate of the vertical line; only valid when vertical.
  double line_x() const;

  PlaneGeodesic reversed() const { return PlaneGeodesic(e2, e1); }
};

PlaneGeodesic transform(const MoebiusMap& m, const PlaneGeodesic& g);

// True when b lies strictly between a and c in the positive cyclic order.
bool cyclically_ordered(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c);

// (p,q,r,s) = (p-r)(q-s) / ((p-s)(q-r)); a point at infinity is handled by
// dropping the two factors containing it (the limit value, never a
// large-number substitute).
double cross_ratio(const BoundaryPoint& p, const BoundaryPoint& q, const BoundaryPoint& r,
                   const BoundaryPoint& s);

// h = arccosh(1 - 2 cr), valid for cr <= 0 (disjoint configuration).
double distance_from_cross_ratio(double cr);
// e = arccos(2 cr - 1), valid for cr in [0, 1] (intersecting configuration).
double angle_from_cross_ratio(double cr);

// Hyperbolic distance between interior points.
double distance(const std::complex<double>& z, const std::complex<double>& w);

// Whether z lies on g (within tol of the circle/line).
bool on_geodesic(const std::complex<double>& z, const PlaneGeodesic& g, double tol = 1e-9);

// Unit Euclidean tangent of g at a point z of g, pointing towards g.e2.
std::complex<double> tangent_at(const PlaneGeodesic& g, const std::complex<double>& z);

// Unoriented angle in [0, pi] between two oriented unit tangents.
double angle_between_directions(const std::complex<double>& t1, const std::complex<double>& t2);

// Geodesic through an interior point with prescribed (nonzero) tangent
// direction; oriented so the direction points towards e2.
PlaneGeodesic geodesic_through(const std::complex<double>& z, const std::complex<double>& dir);

// Oriented geodesic through two distinct interior points (from z1 to z2).
PlaneGeodesic geodesic_between(const std::complex<double>& z1, const std::complex<double>& z2);

// Intersection point of two intersecting geodesics (error when disjoint).
std::complex<double> intersect(const PlaneGeodesic& g1, const PlaneGeodesic& g2);

// Orthogonal projection of z onto g.
std::complex<double> project_to_geodesic(const PlaneGeodesic& g, const std::complex<double>& z);

// Point of g at signed arc length s from z0 (which must lie on g), positive
// towards g.e2.
std::complex<double> point_at_distance(const PlaneGeodesic& g, const std::complex<double>& z0,
                                       double s);

// Geodesic through z0 (on g) orthogonal to g.
PlaneGeodesic perpendicular_at(const PlaneGeodesic& g, const std::complex<double>& z0);

struct CommonPerpendicular {
  PlaneGeodesic geodesic;       // the perpendicular itself
  double length;                // distance between the two input geodesics
  std::complex<double> foot1;   // foot on g1
  std::complex<double> foot2;   // foot on g2
};

// Unique common perpendicular of two disjoint geodesics with disjoint
// closures; error for intersecting or asymptotic pairs.
CommonPerpendicular common_perpendicular(const PlaneGeodesic& g1, const PlaneGeodesic& g2);

// The equidistant locus of two disjoint geodesics (a geodesic through the
// midpoint of their common perpendicular, orthogonal to it).
PlaneGeodesic midcurve(const PlaneGeodesic& g1, const PlaneGeodesic& g2);

// ---- Polygon trigonometry (right-angled and mixed-angle laws) ----

// Side AB of a triangle from its three angles: cosh AB = (cos a cos b + cos c)
// / (sin a sin b).  Angle sum must be < pi.
double triangle_side_from_angles(double alpha, double beta, double gamma);
// Angle at A from the three sides: cos a = (cosh AB cosh AC - cosh BC) /
// (sinh AB sinh AC).
double triangle_angle_from_sides(double ab, double ac, double bc);
// Max over the three pairs of |sin a sinh(opposite') - sin a' sinh(opposite)|.
double triangle_sine_law_residual(double alpha, double beta, double gamma, double bc, double ac,
                                  double ab);

// Quadrilateral with right angles at A, B, C: the fourth angle.
double quad_three_right_angle(double ab, double bc);
// Quadrilateral with right angles at C, D: side AB from the angles at A, B
// and the side CD.
double quad_two_right_side(double alpha, double beta, double cd);

// Pentagon with four right angles: side BC opposite the angle gamma at E.
double pentagon_side(double ab, double cd, double gamma);
// Hexagon with six right angles: side BC from its two neighbours and the
// opposite side EF.
double hexagon_side(double ab, double cd, double ef);

// ---- Explicit right-angled hexagon in the half-plane ----
//
// Alternate sides a0, a1, a2 prescribed; vertices ordered
// (z0, y0, z1, y1, z2, y2) so that side 2m runs z_m -> y_m with length a_m and
// side 2m+1 lies on a boundary geodesic.  boundary[m] carries the side
// following a_m.
struct DevelopedHexagon {
  std::array<std::complex<double>, 6> vertices;
  std::array<PlaneGeodesic, 6> sides;
  std::array<double, 6> side_lengths;
  std::array<PlaneGeodesic, 3> boundary;  // geodesics carrying sides 1, 3, 5

  double arc_length(int m) const { return side_lengths[2 * m]; }
  double boundary_length(int m) const { return side_lengths[2 * m + 1]; }
};

DevelopedHexagon develop_hexagon(double a0, double a1, double a2);

// Equidistant point of the three boundary geodesics of a developed hexagon
// together with its projections (the spine vertex of the doubled pair of
// pants).  Exists only while all half-widths are positive.
struct HexagonSpinePoint {
  std::complex<double> center;
  std::array<std::complex<double>, 3> foot;      // projection on boundary[m]
  std::array<std::complex<double>, 3> arc_foot;  // projection on the a_m side
};

bool hexagon_spine_point(const DevelopedHexagon& hex, HexagonSpinePoint* out);

}  // namespace wparc
