#pragma once

#include <complex>
#include <map>
#include <vector>

#include "wparc/surface.hpp"

// Coordinate geometry on a triangulated surface: arc lengths determine the
// per-hexagon boundary sides, half-widths and spine angles, the boundary
// components' lengths and circular foot positions, and through those the flip
// and spine-search moves.
//
// Slot conventions (fixed by the hexagon picture): in a hexagon with sides
// (s0, s1, s2) the boundary side between the feet of s_m and reverse(s_{m+1})
// is slot m; its length is the right-angled-hexagon side opposite a_{m+2}.
// The half-width of side m in its hexagon is the portion of each adjacent
// boundary side cut off by the spine projections,
//   sinh(w_m) = (S_{m+1} + S_{m+2} - S_m) / (2 sqrt(S_{m+1} S_{m+2} (S_m - 1)))
// written in S_m = s_m^2 = cosh^2(a_m / 2), and the boundary side of slot m
// splits as b_m = w_m + w_{m+1}.

namespace wparc {

using ArcLengthVector = std::vector<double>;   // indexed by arc id, entries > 0
using LambdaVector = std::vector<double>;      // decorated lambda-lengths, > 0

void check_positive_lengths(const TriangulatedSurface& s, const ArcLengthVector& a);

// s(alpha) = cosh(l_alpha / 2).
std::vector<double> s_lengths(const ArcLengthVector& a);

struct HexagonGeometry {
  // b[m]: boundary side at slot m (between arc sides m and m+1).
  std::array<double, 3> b;
  // w[m]: half-width of arc side m within this hexagon.
  std::array<double, 3> w;
  // cos of the spine angle facing arc side m.  The angle itself is real only
  // while |cos| <= 1; gamma() applies the principal branch so that the three
  // angles always sum to pi.
  std::array<double, 3> cos_gamma;

  std::complex<double> gamma(int m) const;
};

std::vector<HexagonGeometry> hexagon_geometry(const TriangulatedSurface& s,
                                              const ArcLengthVector& a);

struct BoundaryGeometry {
  std::vector<BoundaryCycle> cycles;
  std::vector<double> lengths;                    // p_C per cycle
  std::vector<std::vector<double>> foot_position; // circular coordinate per foot
  std::vector<std::vector<double>> segment;       // segment leaving foot k
  std::vector<int> cycle_of_foot;                 // by 2*arc + (forward?0:1)
  std::vector<double> position_of_foot;           // same indexing

  double total_length() const;
  // Distance from the foot of x to the foot of y along their common
  // component, in the positive walk direction; both feet must lie on one
  // component and be distinct.
  double circular_distance(const OrientedArc& x, const OrientedArc& y) const;
  int component_of(const OrientedArc& x) const { return cycle_of_foot[2 * x.arc + (x.forward ? 0 : 1)]; }
};

BoundaryGeometry boundary_geometry(const TriangulatedSurface& s, const ArcLengthVector& a);

// Boundary geometry of a decorated (cusped) surface: same walk, horocyclic
// segment lengths 2 h = 2 lambda_opp / (lambda lambda') per slot.
BoundaryGeometry decorated_boundary_geometry(const TriangulatedSurface& s,
                                             const LambdaVector& lambda);

struct WidthVector {
  std::vector<double> total;                  // w(alpha), per arc
  std::vector<std::array<double, 3>> halves;  // per hexagon and slot
};

// Half-widths from the boundary-distance combination (b_{m+2} + b_{m+1} -
// b_m)/2 per slot, cross-checked against the sinh formula; the two must agree
// within tol.
WidthVector widths(const TriangulatedSurface& s, const ArcLengthVector& a, double tol = 1e-10);

struct FlipResult {
  TriangulatedSurface surface;
  ArcLengthVector lengths;
};

// Geometric flip: develops the two hexagons adjacent to the arc in a common
// half-plane chart and measures the new diagonal as a common perpendicular.
FlipResult flip_length(const TriangulatedSurface& s, const ArcLengthVector& a, int arc);

struct SpineSearchResult {
  TriangulatedSurface surface;
  ArcLengthVector lengths;
  std::vector<int> flips;  // arcs flipped, in order
};

// Flips the most negative-width arc until all widths are >= -tol.
SpineSearchResult find_spine_triangulation(const TriangulatedSurface& s, const ArcLengthVector& a,
                                           double tol = 1e-12, int max_iterations = 1000);

struct NewtonOptions {
  double residual_tol = 1e-10;
  int max_iterations = 60;
  double fd_step_scale = 1e-6;  // step = scale * (1 + |a_i|)
};

// Numeric inversion of a -> w(a) by damped Newton with finite-difference
// Jacobian.  Throws std::runtime_error (reporting the last residual) when it
// fails to converge.
ArcLengthVector invert_widths(const TriangulatedSurface& s, const std::vector<double>& w_target,
                              const ArcLengthVector& initial_guess, NewtonOptions opts = {});

}  // namespace wparc
