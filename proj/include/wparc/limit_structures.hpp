#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wparc/metrics.hpp"
#include "wparc/surface.hpp"

// The two limiting structures of the bivector: Kontsevich's piecewise-linear
// form on the arc complex (large boundary lengths, normalized widths) and
// Penner's decorated coordinates (cusps, lambda-lengths) with the 2-form
// omega_P, the decorated bivector and the duality identity between them.

namespace wparc {

// B[i][j] = sum over hexagons of (+1 when (i,j) are cyclically adjacent in
// the hexagon's order, -1 for (j,i)).
Eigen::MatrixXi kontsevich_bivector(const TriangulatedSurface& s);

// Omega_P = -(1/2) B as a matrix in the d a~ basis (shared combinatorial
// pattern with the PL bivector).
Eigen::MatrixXd penner_form(const TriangulatedSurface& s);

struct DecoratedSurface {
  TriangulatedSurface surface;
  LambdaVector lambda;  // per-arc lambda-lengths, > 0
};

// Reduced lengths a~ = log(lambda^2 / 2) and back.
std::vector<double> reduced_lengths(const LambdaVector& lambda);
LambdaVector lambda_from_reduced(const std::vector<double>& a_tilde);

struct DecoratedGeometry {
  BoundaryGeometry boundary;            // horocyclic walk (segments 2 h)
  std::vector<std::array<double, 3>> h; // h-lengths per hexagon slot
  std::vector<std::array<double, 3>> x; // simplicial coordinate per side slot
  std::vector<double> x_total;          // X_i per arc (both sides summed)
};

DecoratedGeometry decorated_geometry(const DecoratedSurface& d);

// {a~_i, a~_j} = 1/2 sum_C sum_{y != y'} (1 - 2 d_C(y,y')/p_C), same walk and
// conventions as the compact-case bivector.
Eigen::MatrixXd decorated_bivector(const DecoratedSurface& d);

// max over arcs of || Omega_P H~ e_a - (e_a + grad log p_+ + grad log p_-) ||_inf
// with central finite-difference gradients in the reduced lengths.
double duality_residual(const DecoratedSurface& d, double rel_step = 1e-6);

struct LimitStudyRow {
  double t;
  double deviation;  // Delta(t) = || 2 eta~_w - B ||_inf
};

// Scales a = t * a0, pushes the normalized bivector to normalized-width
// coordinates through a finite-difference Jacobian, and records the sup-norm
// deviation from the PL matrix.
std::vector<LimitStudyRow> large_boundary_limit_study(const TriangulatedSurface& s,
                                                      const ArcLengthVector& a0,
                                                      const std::vector<double>& t_list,
                                                      double rel_step = 1e-6);

}  // namespace wparc
