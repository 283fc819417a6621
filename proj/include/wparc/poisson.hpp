#pragma once

#include <Eigen/Dense>

#include "wparc/metrics.hpp"
#include "wparc/surface.hpp"

// The Weil-Petersson Poisson bivector in arc-length coordinates: the matrix
// of brackets {a_i, a_j} assembled from boundary foot positions, with the
// Casimir and Jacobi diagnostics used to verify that it defines a Poisson
// structure whose Casimirs are the boundary lengths.

namespace wparc {

// H[i][j] = {a_i, a_j}
//         = 1/2 sum_C sum_{y in feet(i,C), y' in feet(j,C), y != y'}
//               sinh(p_C/2 - d_C(y, y')) / sinh(p_C/2).
// Antisymmetry follows from d(y,y') + d(y',y) = p_C.
Eigen::MatrixXd wp_bivector(const TriangulatedSurface& s, const ArcLengthVector& a);

// eta(df, dg) = df^T H dg.
double bracket(const Eigen::MatrixXd& h, const Eigen::VectorXd& df, const Eigen::VectorXd& dg);

// Central finite-difference gradient of the length of boundary component
// `cycle` as a function of a.
Eigen::VectorXd boundary_length_gradient(const TriangulatedSurface& s, const ArcLengthVector& a,
                                         int cycle, double rel_step = 1e-6);

// || H grad p_C ||_inf; the boundary lengths are Casimirs, so this vanishes
// up to finite-difference error.
double casimir_residual(const TriangulatedSurface& s, const ArcLengthVector& a, int cycle,
                        double rel_step = 1e-6);

// | sum_cyc sum_l H[i][l] dH[j][k]/da_l | with central finite differences.
double jacobi_residual(const TriangulatedSurface& s, const ArcLengthVector& a, int i, int j, int k,
                       double rel_step = 1e-5);

// da_j / dtau_i along the doubled arc i:
//   1/2 sum over co-boundary oriented-arc pairs of
//   sinh(p_C/2 - d_C(y(->a_j), y(->a_i))) / sinh(p_C/2).
// Relates to the bivector by {a_i, a_j} = -(1/2)(da_j/dtau_i - da_i/dtau_j).
double twist_derivative_arc(const TriangulatedSurface& s, const ArcLengthVector& a, int i, int j);

}  // namespace wparc
