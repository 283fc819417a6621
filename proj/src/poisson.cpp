#include "wparc/poisson.hpp"

#include <cmath>
#include <stdexcept>

namespace wparc {

namespace {

// sinh(p/2 - d)/sinh(p/2) for one ordered foot pair.
double pair_weight(const BoundaryGeometry& geo, const OrientedArc& from, const OrientedArc& to) {
  const int c = geo.component_of(from);
  if (c != geo.component_of(to)) return 0.0;
  const double p = geo.lengths[c];
  const double d = geo.circular_distance(from, to);
  return std::sinh(p / 2.0 - d) / std::sinh(p / 2.0);
}

}  // namespace

Eigen::MatrixXd wp_bivector(const TriangulatedSurface& s, const ArcLengthVector& a) {
  const BoundaryGeometry geo = boundary_geometry(s, a);
  const int n = s.arc_count();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;  // distinct feet of one arc cancel pairwise
      double sum = 0.0;
      for (bool fi : {true, false}) {
        for (bool fj : {true, false}) {
          const OrientedArc yi(i, fi), yj(j, fj);
          if (geo.component_of(yi) != geo.component_of(yj)) continue;
          sum += pair_weight(geo, yi, yj);
        }
      }
      h(i, j) = 0.5 * sum;
    }
  }
  return h;
}

double bracket(const Eigen::MatrixXd& h, const Eigen::VectorXd& df, const Eigen::VectorXd& dg) {
  if (df.size() != h.rows() || dg.size() != h.cols())
    throw std::invalid_argument("bracket: dimension mismatch");
  return df.dot(h * dg);
}

Eigen::VectorXd boundary_length_gradient(const TriangulatedSurface& s, const ArcLengthVector& a,
                                         int cycle, double rel_step) {
  const int n = s.arc_count();
  const size_t n_cycles = boundary_geometry(s, a).lengths.size();
  if (cycle < 0 || cycle >= static_cast<int>(n_cycles))
    throw std::invalid_argument("boundary_length_gradient: no such boundary component");
  Eigen::VectorXd grad(n);
  for (int i = 0; i < n; ++i) {
    const double step = rel_step * (1.0 + std::abs(a[i]));
    ArcLengthVector ap = a, am = a;
    ap[i] += step;
    am[i] -= step;
    const double pp = boundary_geometry(s, ap).lengths[cycle];
    const double pm = boundary_geometry(s, am).lengths[cycle];
    grad[i] = (pp - pm) / (2.0 * step);
  }
  return grad;
}

double casimir_residual(const TriangulatedSurface& s, const ArcLengthVector& a, int cycle,
                        double rel_step) {
  const Eigen::MatrixXd h = wp_bivector(s, a);
  const Eigen::VectorXd grad = boundary_length_gradient(s, a, cycle, rel_step);
  return (h * grad).lpNorm<Eigen::Infinity>();
}

double jacobi_residual(const TriangulatedSurface& s, const ArcLengthVector& a, int i, int j, int k,
                       double rel_step) {
  const int n = s.arc_count();
  if (i == j || j == k || i == k)
    throw std::invalid_argument("jacobi_residual: indices must be distinct");
  if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n)
    throw std::invalid_argument("jacobi_residual: index out of range");

  // dH[r][c]/da_l by central differences, for the three cyclic (r,c) pairs.
  auto dh = [&](int r, int c, int l) {
    const double step = rel_step * (1.0 + std::abs(a[l]));
    ArcLengthVector ap = a, am = a;
    ap[l] += step;
    am[l] -= step;
    return (wp_bivector(s, ap)(r, c) - wp_bivector(s, am)(r, c)) / (2.0 * step);
  };
  const Eigen::MatrixXd h = wp_bivector(s, a);
  double total = 0.0;
  const int idx[3] = {i, j, k};
  for (int cyc = 0; cyc < 3; ++cyc) {
    const int x = idx[cyc], y = idx[(cyc + 1) % 3], z = idx[(cyc + 2) % 3];
    for (int l = 0; l < n; ++l) total += h(x, l) * dh(y, z, l);
  }
  return std::abs(total);
}

double twist_derivative_arc(const TriangulatedSurface& s, const ArcLengthVector& a, int i, int j) {
  const BoundaryGeometry geo = boundary_geometry(s, a);
  const int n = s.arc_count();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("twist_derivative_arc: index out of range");
  double sum = 0.0;
  for (bool fj : {true, false}) {
    for (bool fi : {true, false}) {
      const OrientedArc yj(j, fj), yi(i, fi);
      if (yj == yi) continue;
      if (geo.component_of(yj) != geo.component_of(yi)) continue;
      sum += pair_weight(geo, yj, yi);
    }
  }
  return 0.5 * sum;
}

}  // namespace wparc
