#pragma once

#include <utility>
#include <vector>

#include "subsetspace/relation.hpp"

/// Paths [0,1] -> X(n) realized as piecewise families of straight-line
/// tracks: relation-induced quasigeodesics, the two-leg midpoint
/// construction, and exact geodesics in a larger ambient.
namespace subsetspace {

/// One leg of a path: straight tracks (1-t) a + t b for the pairs (a,b) of a
/// complete relation between the leg endpoints, over a time subinterval.
struct PathLeg {
  FSet start;
  FSet end;
  std::vector<std::pair<int, int>> pairs;  // indices into start/end points
  double t0 = 0.0;
  double t1 = 1.0;
};

class QuasiPath {
 public:
  QuasiPath(std::vector<PathLeg> legs, int ambient_n)
      : legs_(std::move(legs)), ambient_n_(ambient_n) {
    if (legs_.empty()) throw std::invalid_argument("QuasiPath: no legs");
    if (legs_.front().t0 != 0.0 || legs_.back().t1 != 1.0) {
      throw std::invalid_argument("QuasiPath: legs must tile [0,1]");
    }
    for (size_t k = 0; k < legs_.size(); ++k) {
      const PathLeg& leg = legs_[k];
      if (!(leg.t0 < leg.t1)) {
        throw std::invalid_argument("QuasiPath: leg interval is empty");
      }
      if (k > 0) {
        if (legs_[k - 1].t1 != leg.t0) {
          throw std::invalid_argument("QuasiPath: leg intervals must tile [0,1]");
        }
        if (legs_[k - 1].end != leg.start) {
          throw std::invalid_argument("QuasiPath: consecutive legs disagree");
        }
      }
      if (static_cast<int>(leg.pairs.size()) > ambient_n_) {
        throw std::invalid_argument("QuasiPath: leg relation exceeds ambient capacity");
      }
      Relation r(leg.pairs, static_cast<int>(leg.start.size()),
                 static_cast<int>(leg.end.size()));
      if (!r.complete()) {
        throw std::invalid_argument("QuasiPath: leg relation must be complete");
      }
    }
  }

  const std::vector<PathLeg>& legs() const { return legs_; }
  int ambient_n() const { return ambient_n_; }

  FSet eval(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("QuasiPath::eval: t must lie in [0,1]");
    }
    size_t k = 0;
    while (k + 1 < legs_.size() && t > legs_[k].t1) ++k;
    const PathLeg& leg = legs_[k];
    const double s = (t - leg.t0) / (leg.t1 - leg.t0);
    std::vector<Point> pts;
    pts.reserve(leg.pairs.size());
    for (auto [i, j] : leg.pairs) {
      pts.push_back(vec::add(vec::scale(leg.start.points()[i], 1.0 - s),
                             vec::scale(leg.end.points()[j], s)));
    }
    return FSet(std::move(pts), ambient_n_, leg.start.spec());
  }

 private:
  std::vector<PathLeg> legs_;
  int ambient_n_;
};

inline FSet path_eval(const QuasiPath& gamma, double t) { return gamma.eval(t); }

/// Single-leg path tracking the pairs of a complete relation R between x and
/// y. The track count |R| must fit in the ambient space.
inline QuasiPath path_from_relation(const FSet& x, const FSet& y, const Relation& r,
                                    int ambient_n) {
  check_same_spec(x, y);
  if (!r.complete()) {
    throw std::invalid_argument("path_from_relation: relation must be complete");
  }
  if (static_cast<int>(r.size()) > ambient_n) {
    throw std::invalid_argument(
        "path_from_relation: |R| exceeds ambient capacity, path would leave X(n)");
  }
  PathLeg leg{x, y, r.pairs(), 0.0, 1.0};
  return QuasiPath({std::move(leg)}, ambient_n);
}

inline QuasiPath path_from_relation(const FSet& x, const FSet& y, const Relation& r) {
  return path_from_relation(x, y, r, std::max(x.ambient_n(), y.ambient_n()));
}

namespace detail {

inline QuasiPath constant_path(const FSet& x) {
  std::vector<std::pair<int, int>> id;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) id.emplace_back(i, i);
  return path_from_relation(x, x, Relation(id, static_cast<int>(x.size()),
                                           static_cast<int>(x.size())),
                            x.ambient_n());
}

}  // namespace detail

/// 2-quasigeodesic from x to y inside X(n): two straight legs through the
/// midpoint z = x'' u y' supplied by the reduced proximal relation, each
/// pair stretched at most d_H(x,y), concatenated at t = 1/2.
inline QuasiPath quasigeodesic(const FSet& x, const FSet& y) {
  check_same_spec(x, y);
  const int n = std::max(x.ambient_n(), y.ambient_n());
  if (x == y) return detail::constant_path(x.with_ambient(n));

  const Relation red = reduce(proximal_relation(x, y));
  const Decomposition dec = decompose(red);

  // z = x'' u y' as a point set; remember where each index lands in z.
  std::vector<Point> zpts;
  for (int a : dec.x_dprime) zpts.push_back(x.points()[a]);
  for (int b : dec.y_prime) zpts.push_back(y.points()[b]);
  FSet z(zpts, n, x.spec());
  auto z_index = [&z](const Point& q) {
    const auto& zp = z.points();
    return static_cast<int>(std::lower_bound(zp.begin(), zp.end(), q,
                                             vec::lex_less) -
                            zp.begin());
  };

  // When the midpoint coincides with an endpoint, a single relation leg
  // (whose pairs stay within d_H(x,y)) covers the whole path.
  if (z == x) {
    std::vector<std::pair<int, int>> pairs;
    for (int b : dec.y_prime) pairs.emplace_back(z_index(y.points()[b]), b);
    for (auto [b, a] : dec.g) pairs.emplace_back(z_index(x.points()[a]), b);
    return path_from_relation(z, y.with_ambient(n),
                              Relation(pairs, static_cast<int>(z.size()),
                                       static_cast<int>(y.size())),
                              n);
  }
  if (z == y) {
    std::vector<std::pair<int, int>> pairs;
    for (auto [a, b] : dec.f) pairs.emplace_back(a, z_index(y.points()[b]));
    for (int a : dec.x_dprime) pairs.emplace_back(a, z_index(x.points()[a]));
    return path_from_relation(x.with_ambient(n), z,
                              Relation(pairs, static_cast<int>(x.size()),
                                       static_cast<int>(z.size())),
                              n);
  }

  std::vector<std::pair<int, int>> r1, r2;
  for (auto [a, b] : dec.f) r1.emplace_back(a, z_index(y.points()[b]));
  for (int a : dec.x_dprime) r1.emplace_back(a, z_index(x.points()[a]));
  for (int b : dec.y_prime) r2.emplace_back(z_index(y.points()[b]), b);
  for (auto [b, a] : dec.g) r2.emplace_back(z_index(x.points()[a]), b);

  PathLeg leg1{x.with_ambient(n), z, r1, 0.0, 0.5};
  PathLeg leg2{z, y.with_ambient(n), r2, 0.5, 1.0};
  return QuasiPath({std::move(leg1), std::move(leg2)}, n);
}

/// Exact geodesic from x to y in the larger ambient X(N),
/// N = max(|x|, |y|, |x|+|y|-2), via the reduced proximal relation.
inline QuasiPath geodesic_in_larger(const FSet& x, const FSet& y) {
  check_same_spec(x, y);
  const int nx = static_cast<int>(x.size());
  const int ny = static_cast<int>(y.size());
  const int cap = std::max(std::max(nx, ny), nx + ny - 2);
  if (x == y) return detail::constant_path(x.with_ambient(cap));
  const Relation red = reduce(proximal_relation(x, y));
  return path_from_relation(x.with_ambient(cap), y.with_ambient(cap), red, cap);
}

/// Grid sum of Hausdorff increments over the uniform partition of [0,1]
/// into grid_size subintervals. Nondecreasing under refinement; doubling the
/// grid keeps even leg boundaries (like t = 1/2) on the grid.
inline double path_length(const QuasiPath& gamma, int grid_size) {
  if (grid_size < 2) {
    throw std::invalid_argument("path_length: grid_size must be >= 2");
  }
  double len = 0.0;
  FSet prev = gamma.eval(0.0);
  for (int k = 1; k <= grid_size; ++k) {
    FSet cur = gamma.eval(static_cast<double>(k) / grid_size);
    len += hausdorff(prev, cur);
    prev = std::move(cur);
  }
  return len;
}

/// The spaced pair of X(n) along a line: x = {0, m-1, m+1, 2m+1, ...},
/// y = {-1, 1, m, 2m+2, ...} scaled by a unit direction. d_H(x,y) = 1 and
/// every z is at distance >= 1 from x or from y.
inline std::pair<FSet, FSet> spaced_pair(int n, double m, const Point& direction,
                                         const NormSpec& spec) {
  if (n < 3) throw std::invalid_argument("spaced_pair: n must be >= 3");
  if (!(m > 3.0)) throw std::invalid_argument("spaced_pair: m must be > 3");
  if (std::abs(norm(direction, spec) - 1.0) > 1e-12) {
    throw std::invalid_argument("spaced_pair: direction must be a unit vector");
  }
  std::vector<double> xs = {0.0, m - 1.0, m + 1.0};
  std::vector<double> ys = {-1.0, 1.0, m};
  for (int i = 4; i <= n; ++i) {
    xs.push_back((i - 2) * m + 1.0);
    ys.push_back((i - 2) * m + 2.0);
  }
  std::vector<Point> xp, yp;
  for (double s : xs) xp.push_back(vec::scale(direction, s));
  for (double s : ys) yp.push_back(vec::scale(direction, s));
  return {FSet(std::move(xp), n, spec), FSet(std::move(yp), n, spec)};
}

}  // namespace subsetspace
