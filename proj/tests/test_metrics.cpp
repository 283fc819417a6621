#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "doctest.h"
#include "wparc/hyperbolic.hpp"
#include "wparc/metrics.hpp"
#include "wparc/surface.hpp"

using namespace wparc;

namespace {

ArcLengthVector random_lengths(const TriangulatedSurface& s, std::mt19937_64& rng, double lo = 0.3,
                               double hi = 2.5) {
  std::uniform_real_distribution<double> u(lo, hi);
  ArcLengthVector a(s.arc_count());
  for (double& x : a) x = u(rng);
  return a;
}

TriangulatedSurface random_flipped(TriangulatedSurface s, std::mt19937_64& rng, int steps) {
  for (int k = 0; k < steps; ++k) {
    const int arc = static_cast<int>(rng() % s.arc_count());
    try {
      s = flip_combinatorial(s, arc);
    } catch (const std::invalid_argument&) {
    }
  }
  return s;
}

}  // namespace

TEST_CASE("s-lengths") {
  const ArcLengthVector a = {2.0 * std::acosh(2.0), 1e-6, 0.5, 0.7};
  const std::vector<double> s = s_lengths(a);
  CHECK(s[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s[1] > 1.0);
  CHECK(s[2] < s[3]);  // monotone
  CHECK_THROWS_AS(s_lengths({-1.0}), std::invalid_argument);
}

TEST_CASE("hexagon geometry: symmetric values and the zero-numerator case") {
  const double t = std::acosh(2.0);
  const TriangulatedSurface torus = make_one_holed_torus();
  const auto geo = hexagon_geometry(torus, {t, t, t});
  REQUIRE(geo.size() == 2);
  for (const HexagonGeometry& g : geo)
    for (int m = 0; m < 3; ++m) {
      CHECK(g.b[m] == doctest::Approx(t).epsilon(1e-13));
      CHECK(g.cos_gamma[m] == doctest::Approx(0.5).epsilon(1e-13));
      // sinh(w) = 1/(2 sqrt(s^2-1)) with s^2 = 3/2, and the b-side splits in
      // half: w = b/2.
      CHECK(std::sinh(g.w[m]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
      CHECK(g.w[m] == doctest::Approx(t / 2.0).epsilon(1e-12));
      CHECK(g.gamma(m).real() == doctest::Approx(kPi / 3).epsilon(1e-13));
    }

  // s_j^2 + s_k^2 = s_i^2 gives a vanishing half-width and a right angle.
  const double ai = 2.0 * std::acosh(std::sqrt(3.0));
  const double aj = 2.0 * std::acosh(std::sqrt(1.5));
  const auto zero = hexagon_geometry(torus, {ai, aj, aj});
  CHECK(zero[0].w[0] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(zero[0].cos_gamma[0] == doctest::Approx(0.0).epsilon(1e-13));

  // Spine angles always sum to pi, through the complex branch when the
  // configuration leaves the positive-width regime.
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  int complex_regime = 0;
  for (int k = 0; k < 200; ++k) {
    const ArcLengthVector a = {u(rng), u(rng), u(rng)};
    const auto g = hexagon_geometry(torus, a);
    std::complex<double> sum = g[0].gamma(0) + g[0].gamma(1) + g[0].gamma(2);
    CHECK(std::abs(sum - std::complex<double>(kPi, 0.0)) <= 1e-10);
    for (int m = 0; m < 3; ++m)
      if (std::abs(g[0].cos_gamma[m]) > 1.0) ++complex_regime;
    // The angle relation cos(gamma) = sinh(w) sinh(a/2) in every regime.
    for (int m = 0; m < 3; ++m)
      CHECK(g[0].cos_gamma[m] ==
            doctest::Approx(std::sinh(g[0].w[m]) * std::sinh(a[m] / 2.0)).epsilon(1e-11));
  }
  CHECK(complex_regime > 0);  // the sample really exercises the branch
}

TEST_CASE("hexagon geometry agrees with the developed hexagon") {
  const TriangulatedSurface torus = make_one_holed_torus();
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int k = 0; k < 60; ++k) {
    const ArcLengthVector a = {u(rng), u(rng), u(rng)};
    const auto geo = hexagon_geometry(torus, a)[0];
    const DevelopedHexagon hex = develop_hexagon(a[0], a[1], a[2]);
    for (int m = 0; m < 3; ++m)
      CHECK(hex.boundary_length(m) == doctest::Approx(geo.b[m]).epsilon(1e-10));

    HexagonSpinePoint sp;
    if (hexagon_spine_point(hex, &sp)) {
      // Measured half-width: signed distance from the foot of side m to the
      // spine projection along the following boundary side.
      for (int m = 0; m < 3; ++m) {
        const double d = distance(hex.vertices[(2 * m + 1) % 6], sp.foot[m]);
        CHECK(d == doctest::Approx(std::abs(geo.w[m])).epsilon(1e-9));
      }
      // Measured spine angle at the hexagon's equidistant point: the rays to
      // the two boundary projections flanking arc side m span 2 gamma_m
      // (folded to [0, pi], the range of an unsigned angle).
      for (int m = 0; m < 3; ++m) {
        const int prev = (m + 2) % 3;
        const auto ray1 = geodesic_between(sp.center, sp.foot[m]);
        const auto ray2 = geodesic_between(sp.center, sp.foot[prev]);
        const double ang = angle_between_directions(tangent_at(ray1, sp.center),
                                                    tangent_at(ray2, sp.center));
        if (std::abs(geo.cos_gamma[m]) <= 0.999) {
          const double two_gamma = 2.0 * geo.gamma(m).real();
          const double folded = two_gamma > kPi ? 2.0 * kPi - two_gamma : two_gamma;
          CHECK(ang == doctest::Approx(folded).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("boundary geometry: symmetric torus and pants") {
  const double t = std::acosh(2.0);
  const TriangulatedSurface torus = make_one_holed_torus();
  const BoundaryGeometry bt = boundary_geometry(torus, {t, t, t});
  REQUIRE(bt.lengths.size() == 1);
  CHECK(bt.lengths[0] == doctest::Approx(6.0 * t).epsilon(1e-13));
  for (double seg : bt.segment[0]) CHECK(seg == doctest::Approx(t).epsilon(1e-13));

  const TriangulatedSurface pants = make_pair_of_pants();
  const BoundaryGeometry bp = boundary_geometry(pants, {t, t, t});
  REQUIRE(bp.lengths.size() == 3);
  for (double p : bp.lengths) CHECK(p == doctest::Approx(2.0 * t).epsilon(1e-13));

  // d(y,y') + d(y',y) = p for all foot pairs of each component.
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const ArcLengthVector a = random_lengths(torus, rng);
    const BoundaryGeometry geo = boundary_geometry(torus, a);
    const auto& feet = geo.cycles[0].feet;
    for (size_t i = 0; i < feet.size(); ++i)
      for (size_t j = 0; j < feet.size(); ++j) {
        if (i == j) continue;
        const double d1 = geo.circular_distance(feet[i], feet[j]);
        const double d2 = geo.circular_distance(feet[j], feet[i]);
        CHECK(d1 + d2 == doctest::Approx(geo.lengths[0]).epsilon(1e-12));
      }
  }
}

TEST_CASE("widths: symmetric value, boundary partition, dual formulas") {
  const double t = std::acosh(2.0);
  const TriangulatedSurface torus = make_one_holed_torus();
  const WidthVector wv = widths(torus, {t, t, t});
  for (double w : wv.total) CHECK(w == doctest::Approx(2.0 * std::asinh(1.0 / std::sqrt(2.0))).epsilon(1e-12));

  // Half-widths partition each boundary component.
  std::mt19937_64 rng(311);
  for (int trial = 0; trial < 25; ++trial) {
    TriangulatedSurface s = trial % 2 == 0 ? make_one_holed_torus() : make_pair_of_pants();
    s = random_flipped(s, rng, 4);
    const ArcLengthVector a = random_lengths(s, rng);
    const WidthVector w = widths(s, a);  // internal dual-formula check at 1e-10
    const BoundaryGeometry geo = boundary_geometry(s, a);
    for (size_t c = 0; c < geo.cycles.size(); ++c) {
      double half_sum = 0.0;
      for (size_t k = 0; k < geo.cycles[c].feet.size(); ++k) {
        const int h = geo.cycles[c].segment_hex[k];
        const int slot = geo.cycles[c].segment_slot[k];
        half_sum += w.halves[h][slot] + w.halves[h][(slot + 1) % 3];
      }
      CHECK(half_sum == doctest::Approx(geo.lengths[c]).epsilon(1e-10));
    }
  }
}

TEST_CASE("geometric flip: involution, symmetry, boundary invariance") {
  const TriangulatedSurface torus = make_one_holed_torus();
  const double t = std::acosh(2.0);

  // The three flips from the symmetric point give equal new lengths.
  double new_len[3];
  for (int arc = 0; arc < 3; ++arc) {
    const FlipResult f = flip_length(torus, {t, t, t}, arc);
    new_len[arc] = f.lengths[arc];
    CHECK(f.surface.validate().valid);
  }
  CHECK(new_len[1] == doctest::Approx(new_len[0]).epsilon(1e-12));
  CHECK(new_len[2] == doctest::Approx(new_len[0]).epsilon(1e-12));

  std::mt19937_64 rng(4711);
  for (int trial = 0; trial < 25; ++trial) {
    TriangulatedSurface s = trial % 2 == 0 ? make_one_holed_torus() : make_pair_of_pants();
    const ArcLengthVector a = random_lengths(s, rng, 0.5, 2.0);
    const int arc = static_cast<int>(rng() % s.arc_count());
    const std::vector<double> p_before = boundary_geometry(s, a).lengths;

    const SideRef r1 = s.find_side(OrientedArc(arc, true));
    const SideRef r2 = s.find_side(OrientedArc(arc, false));
    if (r1.hexagon == r2.hexagon) continue;  // self-glued
    const FlipResult once = flip_length(s, a, arc);
    // Boundary lengths are intrinsic (compare as multisets).
    std::vector<double> p_after = boundary_geometry(once.surface, once.lengths).lengths;
    std::vector<double> want = p_before;
    std::sort(want.begin(), want.end());
    std::sort(p_after.begin(), p_after.end());
    REQUIRE(p_after.size() == want.size());
    for (size_t c = 0; c < want.size(); ++c)
      CHECK(p_after[c] == doctest::Approx(want[c]).epsilon(1e-8));

    // Flip back: combinatorics return up to relabelling, lengths on the nose.
    const FlipResult back = flip_length(once.surface, once.lengths, arc);
    CHECK(isomorphic(back.surface, s));
    for (int i = 0; i < s.arc_count(); ++i)
      CHECK(back.lengths[i] == doctest::Approx(a[i]).epsilon(1e-8));
  }
}

TEST_CASE("spine search") {
  const TriangulatedSurface torus = make_one_holed_torus();
  const double t = std::acosh(2.0);

  // Symmetric input: all widths positive, nothing flips.
  const SpineSearchResult sym = find_spine_triangulation(torus, {t, t, t});
  CHECK(sym.flips.empty());

  std::mt19937_64 rng(909090);
  int flipped_runs = 0;
  for (int trial = 0; trial < 30; ++trial) {
    TriangulatedSurface s = trial % 2 == 0 ? make_one_holed_torus() : make_pair_of_pants();
    s = random_flipped(s, rng, 3);
    const ArcLengthVector a = random_lengths(s, rng, 0.2, 2.8);
    const SpineSearchResult res = find_spine_triangulation(s, a);
    const WidthVector w = widths(res.surface, res.lengths, 1e-8);
    for (double wi : w.total) CHECK(wi >= -1e-12);
    if (!res.flips.empty()) ++flipped_runs;
    // Boundary lengths preserved through the whole search.
    std::vector<double> p0 = boundary_geometry(s, a).lengths;
    std::vector<double> p1 = boundary_geometry(res.surface, res.lengths).lengths;
    std::sort(p0.begin(), p0.end());
    std::sort(p1.begin(), p1.end());
    for (size_t c = 0; c < p0.size(); ++c) CHECK(p1[c] == doctest::Approx(p0[c]).epsilon(1e-8));
  }
  CHECK(flipped_runs > 0);  // the sweep actually exercises flipping
}

TEST_CASE("width inversion") {
  const TriangulatedSurface torus = make_one_holed_torus();
  const double t = std::acosh(2.0);
  const ArcLengthVector guess = {1.0, 1.0, 1.0};

  // Symmetric target reproduces the symmetric point.
  const double w_sym = 2.0 * std::asinh(1.0 / std::sqrt(2.0));
  const ArcLengthVector a_sym = invert_widths(torus, {w_sym, w_sym, w_sym}, guess);
  for (double ai : a_sym) CHECK(ai == doctest::Approx(t).epsilon(1e-9));

  // Round trip near the symmetric point.
  std::mt19937_64 rng(246);
  std::uniform_real_distribution<double> u(-0.25, 0.25);
  for (int trial = 0; trial < 15; ++trial) {
    const ArcLengthVector a = {t + u(rng), t + u(rng), t + u(rng)};
    const WidthVector wv = widths(torus, a);
    bool positive = true;
    for (double w : wv.total) positive &= w > 0.0;
    if (!positive) continue;
    const ArcLengthVector rec = invert_widths(torus, wv.total, guess);
    for (int i = 0; i < 3; ++i) CHECK(rec[i] == doctest::Approx(a[i]).epsilon(1e-8));
  }

  // Finite-difference Jacobian of the width map is nonsingular; report the
  // conditioning.
  const ArcLengthVector a0 = {t + 0.1, t - 0.05, t + 0.2};
  const double step = 1e-6;
  Eigen::MatrixXd J(3, 3);
  for (int j = 0; j < 3; ++j) {
    ArcLengthVector ap = a0, am = a0;
    ap[j] += step;
    am[j] -= step;
    const WidthVector wp = widths(torus, ap), wm = widths(torus, am);
    for (int i = 0; i < 3; ++i) J(i, j) = (wp.total[i] - wm.total[i]) / (2.0 * step);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const double cond = svd.singularValues()(0) / svd.singularValues()(2);
  MESSAGE("width Jacobian condition number: ", cond);
  CHECK(svd.singularValues()(2) > 1e-8 * svd.singularValues()(0));

  CHECK_THROWS_AS(invert_widths(torus, {-1.0, 1.0, 1.0}, guess), std::invalid_argument);
}
