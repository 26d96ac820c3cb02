#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "subsetspace/path.hpp"

using namespace subsetspace;
using Catch::Approx;

namespace {

FSet line(std::vector<double> xs, int ambient) {
  std::vector<Point> pts;
  for (double v : xs) pts.push_back({v});
  return FSet(std::move(pts), ambient, NormSpec(2, 1));
}

}  // namespace

TEST_CASE("path_from_relation") {
  SECTION("identity relation gives the constant path") {
    FSet x = line({0, 1}, 2);
    QuasiPath g = path_from_relation(x, x, Relation({{0, 0}, {1, 1}}, 2, 2));
    CHECK(g.eval(0.0) == x);
    CHECK(g.eval(0.37) == x);
    CHECK(g.eval(1.0) == x);
  }
  SECTION("splitting track") {
    QuasiPath g = path_from_relation(line({0}, 2), line({-1, 1}, 2),
                                     Relation({{0, 0}, {0, 1}}, 1, 2));
    CHECK(g.eval(0.5) == line({-0.5, 0.5}, 2));
    CHECK(g.eval(0.0) == line({0}, 2));
    CHECK(g.eval(1.0) == line({-1, 1}, 2));
  }
  SECTION("capacity error when the relation needs more tracks than n") {
    FSet x = line({0, 3, 5}, 3), y = line({-1, 1, 4}, 3);
    Relation full = proximal_relation(x, y);  // 4 pairs
    CHECK_THROWS_AS(path_from_relation(x, y, full, 3), std::invalid_argument);
    // three tracks to the midpoint set {0, 4} fit: 0->0, 3->4, 5->4
    FSet z = line({0, 4}, 3);
    QuasiPath g = path_from_relation(x, z, Relation({{0, 0}, {1, 1}, {2, 1}}, 3, 2));
    CHECK(g.eval(0.5) == line({0, 3.5, 4.5}, 3));
  }
  SECTION("incomplete relations are rejected") {
    CHECK_THROWS_AS(
        path_from_relation(line({0, 1}, 2), line({2, 3}, 2),
                           Relation({{0, 0}}, 2, 2)),
        std::invalid_argument);
  }
}

TEST_CASE("quasigeodesic construction") {
  SECTION("constant path for equal endpoints") {
    FSet x = line({0, 2}, 3);
    QuasiPath g = quasigeodesic(x, x);
    CHECK(g.eval(0.5) == x);
  }
  SECTION("midpoint of the spaced configuration") {
    FSet x = line({0, 3, 5}, 3), y = line({-1, 1, 4}, 3);
    QuasiPath g = quasigeodesic(x, y);
    FSet mid = g.eval(0.5);
    CHECK(mid == line({0, 4}, 3));
    CHECK(hausdorff(x, mid) == Approx(hausdorff(x, y)));
    CHECK(hausdorff(mid, y) == Approx(hausdorff(x, y)));
    CHECK(g.eval(0.0) == x);
    CHECK(g.eval(1.0) == y);
  }
  SECTION("X(2) pairs travel on geodesics") {
    FSet x = line({0}, 2), y = line({-1, 1}, 2);
    QuasiPath g = quasigeodesic(x, y);
    const double h = hausdorff(x, y);
    for (int i = 0; i <= 20; ++i) {
      for (int j = i + 1; j <= 20; ++j) {
        const double t = i / 20.0, s = j / 20.0;
        CHECK(hausdorff(g.eval(t), g.eval(s)) == Approx((s - t) * h).margin(1e-9));
      }
    }
  }
  SECTION("2-quasigeodesic modulus on random pairs") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> un(-1.0, 1.0);
    const NormSpec spec(2, 2);
    for (int k = 0; k < 50; ++k) {
      std::vector<Point> ap, bp;
      for (int i = 0; i < 4; ++i) ap.push_back({un(rng), un(rng)});
      for (int i = 0; i < 4; ++i) bp.push_back({un(rng), un(rng)});
      FSet x(ap, 4, spec), y(bp, 4, spec);
      const double h = hausdorff(x, y);
      if (h < 1e-12) continue;
      QuasiPath g = quasigeodesic(x, y);
      std::vector<FSet> evals;
      for (int i = 0; i <= 16; ++i) evals.push_back(g.eval(i / 16.0));
      for (int i = 0; i <= 16; ++i) {
        for (int j = i + 1; j <= 16; ++j) {
          CHECK(hausdorff(evals[i], evals[j]) <=
                2.0 * (j - i) / 16.0 * h + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("geodesic_in_larger") {
  SECTION("singleton to pair needs X(2)") {
    QuasiPath g = geodesic_in_larger(line({0}, 1), line({-1, 1}, 2));
    CHECK(g.ambient_n() == 2);
    const double h = 1.0;
    for (int i = 0; i <= 10; ++i) {
      for (int j = i + 1; j <= 10; ++j) {
        CHECK(hausdorff(g.eval(i / 10.0), g.eval(j / 10.0)) ==
              Approx((j - i) / 10.0 * h).margin(1e-9));
      }
    }
  }
  SECTION("separated pairs move synchronously") {
    QuasiPath g = geodesic_in_larger(line({0, 1}, 2), line({5, 6}, 2));
    CHECK(g.legs().size() == 1);
    CHECK(g.legs()[0].pairs ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
    CHECK(g.eval(0.5) == line({2.5, 3.5}, 2));
  }
  SECTION("constant for equal sets") {
    FSet x = line({0, 1}, 2);
    CHECK(geodesic_in_larger(x, x).eval(0.3) == x);
  }
}

TEST_CASE("path_eval endpoints and errors") {
  FSet x = line({0, 3, 5}, 3), y = line({-1, 1, 4}, 3);
  QuasiPath g = quasigeodesic(x, y);
  CHECK(path_eval(g, 0.0) == x);
  CHECK(path_eval(g, 1.0) == y);
  CHECK(path_eval(g, 0.5) == line({0, 4}, 3));
  CHECK_THROWS_AS(path_eval(g, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(path_eval(g, 1.1), std::invalid_argument);
}

TEST_CASE("path_length") {
  SECTION("constant path has zero length") {
    FSet x = line({1, 2}, 2);
    CHECK(path_length(quasigeodesic(x, x), 64) == 0.0);
  }
  SECTION("geodesic length telescopes to the distance") {
    QuasiPath g = quasigeodesic(line({0}, 2), line({-1, 1}, 2));
    CHECK(path_length(g, 64) == Approx(1.0).margin(1e-12));
  }
  SECTION("spaced pair quasigeodesic attains the factor-2 length bound") {
    auto [x, y] = spaced_pair(3, 4.0, {1.0}, NormSpec(2, 1));
    QuasiPath g = quasigeodesic(x, y);
    const double l512 = path_length(g, 512);
    const double l1024 = path_length(g, 1024);
    CHECK(l512 == Approx(2.0 * hausdorff(x, y)).margin(1e-9));
    CHECK(std::abs(l1024 - l512) < 1e-9);
    // refinement is monotone
    CHECK(path_length(g, 8) <= path_length(g, 16) + 1e-12);
    CHECK(path_length(g, 16) <= path_length(g, 32) + 1e-12);
  }
  SECTION("grid size validation") {
    FSet x = line({0}, 1);
    CHECK_THROWS_AS(path_length(quasigeodesic(x, x), 1), std::invalid_argument);
  }
}

TEST_CASE("spaced pairs") {
  const NormSpec s1(2, 1);
  SECTION("published construction at n = 3, m = 4") {
    auto [x, y] = spaced_pair(3, 4.0, {1.0}, s1);
    CHECK(x == line({0, 3, 5}, 3));
    CHECK(y == line({-1, 1, 4}, 3));
    CHECK(hausdorff(x, y) == 1.0);
  }
  SECTION("n = 4, m = 5") {
    auto [x, y] = spaced_pair(4, 5.0, {1.0}, s1);
    CHECK(x == line({0, 4, 6, 11}, 4));
    CHECK(y == line({-1, 1, 5, 12}, 4));
    CHECK(hausdorff(x, y) == 1.0);
  }
  SECTION("spacedness against random candidates") {
    std::mt19937_64 rng(23);
    for (int n : {3, 5}) {
      auto [x, y] = spaced_pair(n, 4.0, {1.0}, s1);
      std::uniform_real_distribution<double> un(-2.0, (n - 2) * 4.0 + 3.0);
      for (int k = 0; k < 2000; ++k) {
        std::vector<Point> zp;
        int zn = 1 + static_cast<int>(rng() % n);
        for (int i = 0; i < zn; ++i) zp.push_back({un(rng)});
        FSet z(zp, n, s1);
        CHECK(std::max(hausdorff(x, z), hausdorff(z, y)) >= 1.0 - 1e-12);
      }
    }
  }
  SECTION("midpoint inequality forces the sharp constant") {
    for (int n = 3; n <= 8; ++n) {
      auto [x, y] = spaced_pair(n, 4.0, {1.0}, s1);
      FSet mid = quasigeodesic(x, y).eval(0.5);
      const double lambda =
          2.0 * std::max(hausdorff(x, mid), hausdorff(mid, y)) / hausdorff(x, y);
      CHECK(lambda >= 2.0 - 1e-6);
    }
  }
  SECTION("argument validation") {
    CHECK_THROWS_AS(spaced_pair(2, 4.0, {1.0}, s1), std::invalid_argument);
    CHECK_THROWS_AS(spaced_pair(3, 3.0, {1.0}, s1), std::invalid_argument);
    CHECK_THROWS_AS(spaced_pair(3, 4.0, {2.0}, s1), std::invalid_argument);
  }
}
