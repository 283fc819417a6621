#pragma once

#include <vector>

#include "wparc/hyperbolic.hpp"

// Fenchel-Nielsen twist-derivative calculus on the half-plane boundary.
//
// Twist convention: the right twist along the geodesic oriented s1 -> s2
// moves the boundary points on its left -- the cyclic interval (s2, s1) --
// forward (towards s2 through the model flow x -> e^t x after mapping
// (s1, s2) to (0, inf)).  The indicator side was fixed against the numeric
// flow once; the printed interval condition in the source lemma has its
// endpoints transposed.  Swapping the labels s1 <-> s2 under this rule leaves
// the derivative unchanged (the twist does not depend on the orientation of
// the curve); flowing the complementary side instead negates it (a left
// twist).

namespace wparc {

struct TwistConfiguration {
  std::array<BoundaryPoint, 4> z;  // the four cross-ratio entries, in order
  BoundaryPoint s1, s2;            // the lift
};

// Derivative of (z1,z2,z3,z4) under the unit-speed right twist along
// (s1 s2), by Wolpert's cross-ratio lemma.
double cr_twist_derivative(const TwistConfiguration& c);

enum class TwistSide { left, right };

// The same derivative through the explicit boundary flow (points on the
// chosen side scaled by e^t in the model chart), central difference in t.
double numeric_twist_flow_derivative(const TwistConfiguration& c, TwistSide side = TwistSide::left,
                                     double step = 1e-5);

// ---- Per-lift closed forms (cr-relative rates (d cr / d tau) / cr) ----
//
// The standard position has gamma_1 = (p s), gamma_2 = (q r) with
// p < s < q < r cyclically and the common perpendicular delta of length h.

enum class LiftCase {
  head_side,   // lift separates s (resp. r) from the other three
  tail_side,   // lift separates p (resp. q)
  homotopic,   // lift crosses both gamma_1 and gamma_2
  distant,     // lift crosses delta but neither gamma
};

struct LiftParams {
  double h = 0.0;      // distance between gamma_1 and gamma_2
  double d = 0.0;      // signed distance from the foot y_i to the crossing
  double nu = kPi / 2; // crossing angle with gamma_i
  double nu2 = kPi / 2;  // homotopic case: angle at the second crossing
  double alpha = kPi / 2;  // distant case: clockwise angle from (z y_1) to xi
};

double per_lift_contribution(LiftCase c, const LiftParams& p);

// ---- Scenario-level evaluation ----

struct IntersectionDatum {
  int target = 1;                   // 1 or 2: which gamma is crossed
  double nu = kPi / 2;              // crossing angle, in (0, pi)
  double d = 0.0;                   // signed distance from y_i along gamma_i
  bool closed = false;              // gamma_i closed?
  double p = 0.0;                   // length of gamma_i when closed
  int r_wind = 0;                   // winding count r(x_i)
  bool homotopic_to_delta = false;  // [x_i, x_{3-i}] ~ delta
};

struct DistantIntersection {
  double alpha = kPi / 2;  // in [0, pi)
};

struct TwistScenario {
  double h = 0.0;
  std::vector<IntersectionDatum> items;
  std::vector<DistantIntersection> distant;
};

void check_scenario(const TwistScenario& s);

// The coefficient c_i(x_i) of one crossing in d h / d tau_xi.
double coefficient_c(const IntersectionDatum& datum, double h);

// Full first-order variation of h: sum of coefficient_c over the crossings
// plus cos(alpha) over the distant intersections.
double twist_derivative_distance(const TwistScenario& s);

// The right-angle specialization (every nu = pi/2, no homotopic segments, no
// distant intersections); same code path as the general formula.
double twist_derivative_distance_right_angles(const TwistScenario& s);

// ---- Standard-position constructions (oracle scaffolding) ----
//
// gamma_1 is the unit semicircle (p,s) = (-1,1), gamma_2 the semicircle
// (q,r) = (e^h, -e^h), delta the imaginary-axis segment [i, i e^h].

struct StandardPosition {
  double h;
  PlaneGeodesic gamma1, gamma2;
  std::complex<double> y1, y2;
  double cr;  // (p,q,r,s) = -sinh^2(h/2)

  explicit StandardPosition(double h_);
  TwistConfiguration config(const PlaneGeodesic& lift) const;
};

// Lift crossing gamma_i (i = 1, 2) at signed distance d from y_i with angle
// nu; the returned geodesic realizes the head_side/tail_side case recorded in
// *realized (throws when neither rotation lands in a single-crossing case).
PlaneGeodesic construct_gamma_crossing(const StandardPosition& sp, int target, double d, double nu,
                                       LiftCase* realized);

// Lift crossing both gammas through the prescribed points (homotopic case);
// measures the two crossing angles, each against the lift oriented towards
// the companion crossing.
PlaneGeodesic construct_homotopic_lift(const StandardPosition& sp, double d1, double d2,
                                       double* nu1, double* nu2);

// Same angle measurement for an existing homotopic-type lift.
void measure_homotopic_angles(const StandardPosition& sp, const PlaneGeodesic& lift, double* nu1,
                              double* nu2);

// Distant lift through the point of delta at signed distance e below the
// midpoint, rotated clockwise by alpha from the ray towards y1.
PlaneGeodesic construct_distant_lift(const StandardPosition& sp, double e, double alpha);

// Which of the six points {p,s,q,r} the lift separates, as a LiftCase with
// target; used to assert constructed configurations are in-case.
bool lift_is_case(const StandardPosition& sp, const PlaneGeodesic& lift, int target, LiftCase c);

}  // namespace wparc
