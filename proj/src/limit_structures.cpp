#include "wparc/limit_structures.hpp"

#include <cmath>
#include <stdexcept>

#include "wparc/poisson.hpp"

namespace wparc {

Eigen::MatrixXi kontsevich_bivector(const TriangulatedSurface& s) {
  const int n = s.arc_count();
  Eigen::MatrixXi b = Eigen::MatrixXi::Zero(n, n);
  for (const Hexagon& h : s.hexagons()) {
    for (int m = 0; m < 3; ++m) {
      const int i = h.side(m).arc, j = h.side(m + 1).arc;
      if (i == j) continue;
      b(i, j) += 1;
      b(j, i) -= 1;
    }
  }
  return b;
}

Eigen::MatrixXd penner_form(const TriangulatedSurface& s) {
  return -0.5 * kontsevich_bivector(s).cast<double>();
}

std::vector<double> reduced_lengths(const LambdaVector& lambda) {
  std::vector<double> a(lambda.size());
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] > 0.0)) throw std::invalid_argument("reduced_lengths: lambda must be positive");
    a[i] = std::log(lambda[i] * lambda[i] / 2.0);
  }
  return a;
}

LambdaVector lambda_from_reduced(const std::vector<double>& a_tilde) {
  LambdaVector l(a_tilde.size());
  for (size_t i = 0; i < a_tilde.size(); ++i) l[i] = std::sqrt(2.0 * std::exp(a_tilde[i]));
  return l;
}

DecoratedGeometry decorated_geometry(const DecoratedSurface& d) {
  DecoratedGeometry out;
  out.boundary = decorated_boundary_geometry(d.surface, d.lambda);
  const size_t hn = d.surface.hexagons().size();
  out.h.resize(hn);
  out.x.resize(hn);
  out.x_total.assign(d.surface.arc_count(), 0.0);
  for (size_t t = 0; t < hn; ++t) {
    const Hexagon& hex = d.surface.hexagons()[t];
    for (int m = 0; m < 3; ++m) {
      const double lm = d.lambda[hex.sides[m].arc];
      const double lj = d.lambda[hex.side(m + 1).arc];
      const double lk = d.lambda[hex.side(m + 2).arc];
      out.h[t][m] = lm / (lj * lk);
      out.x[t][m] = (lj * lj + lk * lk - lm * lm) / (lm * lj * lk);
      out.x_total[hex.sides[m].arc] += out.x[t][m];
    }
  }
  return out;
}

Eigen::MatrixXd decorated_bivector(const DecoratedSurface& d) {
  const BoundaryGeometry geo = decorated_boundary_geometry(d.surface, d.lambda);
  const int n = d.surface.arc_count();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double sum = 0.0;
      for (bool fi : {true, false}) {
        for (bool fj : {true, false}) {
          const OrientedArc yi(i, fi), yj(j, fj);
          const int c = geo.component_of(yi);
          if (c != geo.component_of(yj)) continue;
          sum += 1.0 - 2.0 * geo.circular_distance(yi, yj) / geo.lengths[c];
        }
      }
      h(i, j) = 0.5 * sum;
    }
  }
  return h;
}

double duality_residual(const DecoratedSurface& d, double rel_step) {
  const int n = d.surface.arc_count();
  const Eigen::MatrixXd omega = penner_form(d.surface);
  const Eigen::MatrixXd h = decorated_bivector(d);
  const std::vector<double> a0 = reduced_lengths(d.lambda);
  const BoundaryGeometry geo0 = decorated_boundary_geometry(d.surface, d.lambda);
  const int cycles = static_cast<int>(geo0.lengths.size());

  // grad_a~ log p_C by central differences.
  Eigen::MatrixXd grad_logp(cycles, n);
  for (int i = 0; i < n; ++i) {
    const double step = rel_step * (1.0 + std::abs(a0[i]));
    std::vector<double> ap = a0, am = a0;
    ap[i] += step;
    am[i] -= step;
    const BoundaryGeometry gp = decorated_boundary_geometry(d.surface, lambda_from_reduced(ap));
    const BoundaryGeometry gm = decorated_boundary_geometry(d.surface, lambda_from_reduced(am));
    for (int c = 0; c < cycles; ++c)
      grad_logp(c, i) = (std::log(gp.lengths[c]) - std::log(gm.lengths[c])) / (2.0 * step);
  }

  double worst = 0.0;
  for (int arc = 0; arc < n; ++arc) {
    // The two boundary components at the ends of the arc (possibly equal, in
    // which case the log term enters twice).
    const int c_head = geo0.component_of(OrientedArc(arc, true));
    const int c_tail = geo0.component_of(OrientedArc(arc, false));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[arc] = 1.0;
    rhs += grad_logp.row(c_head).transpose();
    rhs += grad_logp.row(c_tail).transpose();
    const Eigen::VectorXd lhs = omega * (h * Eigen::VectorXd::Unit(n, arc));
    worst = std::max(worst, (lhs - rhs).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

std::vector<LimitStudyRow> large_boundary_limit_study(const TriangulatedSurface& s,
                                                      const ArcLengthVector& a0,
                                                      const std::vector<double>& t_list,
                                                      double rel_step) {
  check_positive_lengths(s, a0);
  for (size_t k = 0; k + 1 < t_list.size(); ++k)
    if (!(t_list[k] > t_list[k + 1]) || !(t_list[k + 1] > 0.0))
      throw std::invalid_argument("limit study: t-list must be strictly decreasing and positive");

  const int n = s.arc_count();
  const Eigen::MatrixXd b = kontsevich_bivector(s).cast<double>();

  // Normalized widths w~ = 2 w / sum_C p_C as a function of a.
  auto normalized_widths = [&](const ArcLengthVector& a) {
    const WidthVector wv = widths(s, a, 1e-6);
    const double total = boundary_geometry(s, a).total_length();
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = 2.0 * wv.total[i] / total;
    return w;
  };

  std::vector<LimitStudyRow> rows;
  for (double t : t_list) {
    ArcLengthVector a(n);
    for (int i = 0; i < n; ++i) a[i] = t * a0[i];

    const double half_sum = 0.5 * boundary_geometry(s, a).total_length();
    const Eigen::MatrixXd eta_norm = half_sum * half_sum * wp_bivector(s, a);

    Eigen::MatrixXd jac(n, n);
    for (int i = 0; i < n; ++i) {
      const double step = rel_step * (1.0 + std::abs(a[i]));
      ArcLengthVector ap = a, am = a;
      ap[i] += step;
      am[i] -= step;
      jac.col(i) = (normalized_widths(ap) - normalized_widths(am)) / (2.0 * step);
    }
    if (std::abs(jac.fullPivLu().determinant()) < 1e-300)
      throw std::runtime_error("limit study: width Jacobian is singular");

    const Eigen::MatrixXd eta_w = jac * eta_norm * jac.transpose();
    rows.push_back({t, (2.0 * eta_w - b).lpNorm<Eigen::Infinity>()});
  }
  return rows;
}

}  // namespace wparc
