#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "subsetspace/selector.hpp"

using namespace subsetspace;
using Catch::Approx;

namespace {

/// Exterior-angle oracle for the Steiner point of a convex polygon:
/// the vertices weighted by exterior angle over 2 pi.
Point polygon_steiner_oracle(const std::vector<Point>& verts) {
  const size_t m = verts.size();
  Point s = {0.0, 0.0};
  for (size_t i = 0; i < m; ++i) {
    const Point& prev = verts[(i + m - 1) % m];
    const Point& cur = verts[i];
    const Point& next = verts[(i + 1) % m];
    const Point a = vec::sub(cur, prev);
    const Point b = vec::sub(next, cur);
    const double ext = std::atan2(a[0] * b[1] - a[1] * b[0],
                                  a[0] * b[0] + a[1] * b[1]);
    s = vec::add(s, vec::scale(cur, ext / (2.0 * std::numbers::pi)));
  }
  return s;
}

}  // namespace

TEST_CASE("SelectorConfig validation") {
  CHECK_THROWS_AS(SelectorConfig(999, 1), std::invalid_argument);
  CHECK_NOTHROW(SelectorConfig(1000, 1));
}

TEST_CASE("steiner point closed cases") {
  const NormSpec s2(2, 2);
  const SelectorConfig cfg(4096, 11);
  SECTION("singleton is exact") {
    FSet x({{0.3, -0.7}}, 3, s2);
    CHECK(steiner_point(x, cfg) == Point{0.3, -0.7});
  }
  SECTION("segment midpoint by antithetic cancellation") {
    FSet x({{-1.0, 2.0}, {3.0, 0.5}}, 2, s2);
    Point s = steiner_point(x, cfg);
    CHECK(s[0] == Approx(1.0).margin(1e-9));
    CHECK(s[1] == Approx(1.25).margin(1e-9));
  }
  SECTION("right triangle against the exterior-angle oracle") {
    const std::vector<Point> verts = {{0, 0}, {1, 0}, {0, 1}};
    FSet x(verts, 3, s2);
    Point oracle = polygon_steiner_oracle(verts);
    CHECK(oracle[0] == Approx(3.0 / 8.0).margin(1e-12));
    CHECK(oracle[1] == Approx(3.0 / 8.0).margin(1e-12));
    Point s = steiner_point(x, SelectorConfig(1000000, 11));
    CHECK(s[0] == Approx(oracle[0]).margin(2e-3));
    CHECK(s[1] == Approx(oracle[1]).margin(2e-3));
  }
  SECTION("random quadrilaterals against the oracle") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> un(0.1, 1.0);
    for (int k = 0; k < 10; ++k) {
      // convex polygon: sorted angles with random radii
      std::vector<Point> verts;
      std::vector<double> angs = {un(rng), un(rng) + 1.6, un(rng) + 3.2,
                                  un(rng) + 4.8};
      for (double a : angs) {
        const double r = un(rng);
        verts.push_back({r * std::cos(a), r * std::sin(a)});
      }
      FSet x(verts, 4, s2);
      Point oracle = polygon_steiner_oracle(verts);
      Point s = steiner_point(x, SelectorConfig(200000, 11));
      CHECK(s[0] == Approx(oracle[0]).margin(5e-3));
      CHECK(s[1] == Approx(oracle[1]).margin(5e-3));
    }
  }
  SECTION("one dimension uses the exact range midpoint") {
    FSet x({{0.0}, {0.25}, {1.0}}, 3, NormSpec(2, 1));
    CHECK(steiner_point(x, cfg) == Point{0.5});
  }
}

TEST_CASE("selector retraction") {
  const NormSpec s1(2, 1);
  const SelectorConfig cfg(2048, 3);
  CHECK(selector_retraction(FSet({{4.0}}, 3, s1), cfg) == FSet({{4.0}}, 1, s1));
  CHECK(selector_retraction(FSet({{0.0}, {1.0}}, 3, s1), cfg) ==
        FSet({{0.5}}, 1, s1));
  SECTION("affine equivariance under a common direction set") {
    const NormSpec s2(2, 2);
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> un(-1.0, 1.0);
    for (int k = 0; k < 30; ++k) {
      std::vector<Point> pts;
      for (int i = 0; i < 4; ++i) pts.push_back({un(rng), un(rng)});
      FSet x(pts, 4, s2);
      const double t = 0.4 + std::abs(un(rng)) * 2.0;
      const Point v = {un(rng), un(rng)};
      std::vector<Point> mapped;
      for (const Point& q : pts) mapped.push_back(vec::add(vec::scale(q, t), v));
      FSet tx(mapped, 4, s2);
      Point lhs = steiner_point(tx, cfg);
      Point rhs = vec::add(vec::scale(steiner_point(x, cfg), t), v);
      CHECK(dist(lhs, rhs, s2) < 1e-9);
      // pure translations commute up to roundoff, well below the scale case
      std::vector<Point> shifted;
      for (const Point& q : pts) shifted.push_back(vec::add(q, v));
      Point lt = steiner_point(FSet(shifted, 4, s2), cfg);
      Point rt = vec::add(steiner_point(x, cfg), v);
      CHECK(dist(lt, rt, s2) < 1e-12);
    }
  }
}

TEST_CASE("hull projection") {
  const NormSpec s2(2, 2);
  SECTION("interior query is fixed") {
    std::vector<Point> pts = {{0, 0}, {2, 0}, {0, 2}};
    HullProjection prj = hull_project({0.5, 0.5}, pts);
    CHECK(prj.dist < 1e-12);
    CHECK(prj.proj[0] == Approx(0.5).margin(1e-12));
  }
  SECTION("projection onto a segment") {
    std::vector<Point> pts = {{0, 0}, {2, 0}};
    HullProjection prj = hull_project({1.0, 1.0}, pts);
    CHECK(prj.dist == Approx(1.0).margin(1e-12));
    CHECK(prj.proj[0] == Approx(1.0).margin(1e-12));
    CHECK(prj.proj[1] == Approx(0.0).margin(1e-12));
  }
  SECTION("projection onto a vertex") {
    std::vector<Point> pts = {{0, 0}, {1, 0}};
    HullProjection prj = hull_project({2.0, 1.0}, pts);
    CHECK(prj.dist == Approx(std::sqrt(2.0)).margin(1e-12));
    CHECK(prj.weights[1] == Approx(1.0));
  }
  SECTION("certificate reconstructs the projection") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> un(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      std::vector<Point> pts;
      int m = 1 + static_cast<int>(rng() % 6);
      for (int i = 0; i < m; ++i) pts.push_back({un(rng), un(rng)});
      Point q = {2.0 * un(rng), 2.0 * un(rng)};
      HullProjection prj = hull_project(q, pts);
      double wsum = 0.0;
      Point y = {0, 0};
      for (size_t i = 0; i < pts.size(); ++i) {
        CHECK(prj.weights[i] >= 0.0);
        wsum += prj.weights[i];
        y = vec::add(y, vec::scale(pts[i], prj.weights[i]));
      }
      CHECK(wsum == Approx(1.0).margin(1e-12));
      CHECK(dist(y, prj.proj, s2) < 1e-12);
      // optimality: no vertex improves the distance along the gradient
      Point r = vec::sub(prj.proj, q);
      const double base = vec::dot(r, prj.proj);
      for (const Point& p : pts) {
        CHECK(vec::dot(r, p) >= base - 1e-10);
      }
    }
  }
}

TEST_CASE("steiner membership and hull contraction") {
  const NormSpec s2(2, 2);
  const SelectorConfig cfg(2048, 5);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> un(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    std::vector<Point> ap, bp;
    const int m = 2 + static_cast<int>(rng() % 4);
    for (int i = 0; i < m; ++i) ap.push_back({un(rng), un(rng)});
    // include degenerate collinear sets every third round
    if (k % 3 == 0) {
      ap.clear();
      Point base = {un(rng), un(rng)}, dir = {un(rng), un(rng)};
      for (int i = 0; i < m; ++i) {
        ap.push_back(vec::add(base, vec::scale(dir, 0.3 * i)));
      }
    }
    for (int i = 0; i < m; ++i) bp.push_back({un(rng), un(rng)});
    FSet x(ap, m, s2), y(bp, m, s2);
    Point s = steiner_point(x, cfg);
    CHECK(hull_project(s, x.points()).dist <= 1e-9);
    CHECK(hull_hausdorff_support(x, y, cfg) <= hausdorff(x, y) + 1e-9);
  }
}
