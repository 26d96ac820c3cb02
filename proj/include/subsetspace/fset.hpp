#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "subsetspace/chebyshev.hpp"
#include "subsetspace/normed.hpp"

/// The metric space X(n): nonempty finite subsets of R^d of cardinality at
/// most n under the Hausdorff distance.
namespace subsetspace {

/// An element of X(n). Points are kept in canonical lexicographic order and
/// deduplicated by exact coordinate equality, so cardinality is well defined.
class FSet {
 public:
  FSet(std::vector<Point> points, int ambient_n, NormSpec spec)
      : ambient_n_(ambient_n), spec_(spec) {
    if (points.empty()) {
      throw std::invalid_argument("FSet: point list must be nonempty");
    }
    if (ambient_n < 1) {
      throw std::invalid_argument("FSet: ambient_n must be >= 1");
    }
    for (const Point& q : points) {
      vec::check_dim(q, spec);
      if (!vec::all_finite(q)) {
        throw std::invalid_argument("FSet: coordinates must be finite");
      }
    }
    std::sort(points.begin(), points.end(), vec::lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (static_cast<int>(points.size()) > ambient_n) {
      throw std::invalid_argument("FSet: cardinality exceeds ambient_n");
    }
    points_ = std::move(points);
  }

  const std::vector<Point>& points() const { return points_; }
  size_t size() const { return points_.size(); }
  int ambient_n() const { return ambient_n_; }
  const NormSpec& spec() const { return spec_; }

  /// Same copy of the set viewed inside a different ambient X(n).
  FSet with_ambient(int n) const { return FSet(points_, n, spec_); }

  /// Exact set equality (same points, same spec); ambient is not compared.
  bool operator==(const FSet& o) const {
    return spec_ == o.spec_ && points_ == o.points_;
  }
  bool operator!=(const FSet& o) const { return !(*this == o); }

 private:
  std::vector<Point> points_;
  int ambient_n_;
  NormSpec spec_;
};

inline void check_same_spec(const FSet& x, const FSet& y) {
  if (x.spec() != y.spec()) {
    throw std::invalid_argument("FSet operation: mismatched NormSpec");
  }
}

/// Hausdorff distance, exact O(|x||y|) double loop.
inline double hausdorff(const FSet& x, const FSet& y) {
  check_same_spec(x, y);
  const auto& a = x.points();
  const auto& b = y.points();
  std::vector<double> min_row(a.size(), std::numeric_limits<double>::infinity());
  std::vector<double> min_col(b.size(), std::numeric_limits<double>::infinity());
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      double d = dist(a[i], b[j], x.spec());
      min_row[i] = std::min(min_row[i], d);
      min_col[j] = std::min(min_col[j], d);
    }
  }
  double h = 0.0;
  for (double d : min_row) h = std::max(h, d);
  for (double d : min_col) h = std::max(h, d);
  return h;
}

inline double diam(const FSet& x) {
  const auto& a = x.points();
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = i + 1; j < a.size(); ++j) {
      m = std::max(m, dist(a[i], a[j], x.spec()));
    }
  }
  return m;
}

/// Minimum separation delta: zero below full cardinality, otherwise the
/// least pairwise distance. Depends on the ambient n, not just the points.
inline double min_sep(const FSet& x) {
  if (static_cast<int>(x.size()) < x.ambient_n()) return 0.0;
  const auto& a = x.points();
  if (a.size() < 2) return 0.0;
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = i + 1; j < a.size(); ++j) {
      m = std::min(m, dist(a[i], a[j], x.spec()));
    }
  }
  return m;
}

/// Witness for dist_H(x, X(2)): one or two Chebyshev centers, the covering
/// radius, and the cluster assignment of each point of x.
struct TwoCenterWitness {
  std::vector<Point> centers;
  double radius = 0.0;
  std::vector<int> partition;  // 0/1 per point of x, in canonical order
};

/// dist_H(x, X(2)) by exhaustive enumeration of the 2^{|x|-1} bipartitions;
/// an optimal {a,b} induces a nearest-center partition, and per-cluster
/// Chebyshev centers are optimal for each side.
inline TwoCenterWitness dist_to_X2(const FSet& x) {
  const auto& pts = x.points();
  const size_t m = pts.size();
  TwoCenterWitness best;
  if (m <= 2) {
    best.centers = pts;
    best.radius = 0.0;
    best.partition.assign(m, 0);
    if (m == 2) best.partition[1] = 1;
    return best;
  }
  best.radius = std::numeric_limits<double>::infinity();
  std::vector<Point> c0, c1;
  const uint64_t masks = 1ULL << (m - 1);
  for (uint64_t mask = 0; mask < masks; ++mask) {
    c0.clear();
    c1.clear();
    c0.push_back(pts[0]);
    for (size_t i = 1; i < m; ++i) {
      ((mask >> (i - 1)) & 1ULL) ? c1.push_back(pts[i]) : c0.push_back(pts[i]);
    }
    auto [a, ra] = cheb_center(c0, x.spec());
    double r = ra;
    std::optional<std::pair<Point, double>> second;
    if (!c1.empty()) {
      auto [b, rb] = cheb_center(c1, x.spec());
      r = std::max(r, rb);
      second = {b, rb};
    }
    if (r < best.radius) {
      best.radius = r;
      best.centers.clear();
      best.centers.push_back(a);
      if (second) best.centers.push_back(second->first);
      best.partition.assign(m, 0);
      for (size_t i = 1; i < m; ++i) {
        best.partition[i] = static_cast<int>((mask >> (i - 1)) & 1ULL);
      }
    }
  }
  return best;
}

/// The unique proximal bijection of Lemma-type separated pairs: present iff
/// min_sep(x) > 2 d_H(x,y) or min_sep(y) > 2 d_H(x,y). Pairs are indices
/// into the canonical point orders.
inline std::optional<std::vector<std::pair<int, int>>> proximal_bijection(
    const FSet& x, const FSet& y) {
  check_same_spec(x, y);
  if (x.size() != y.size() || static_cast<int>(x.size()) != x.ambient_n() ||
      y.ambient_n() != x.ambient_n()) {
    throw std::invalid_argument(
        "proximal_bijection: requires |x| = |y| = ambient_n");
  }
  const double rho = hausdorff(x, y);
  const size_t n = x.size();
  const bool from_x = min_sep(x) > 2.0 * rho;
  if (!from_x && !(min_sep(y) > 2.0 * rho)) return std::nullopt;

  std::vector<std::pair<int, int>> pairs(n);
  std::vector<int> used(n, 0);
  const FSet& s = from_x ? x : y;
  const FSet& t = from_x ? y : x;
  // Each closed rho-ball around a point of the separated set contains
  // exactly one point of the other set.
  for (size_t i = 0; i < n; ++i) {
    size_t arg = 0;
    double bestd = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < n; ++j) {
      double d = dist(s.points()[i], t.points()[j], x.spec());
      if (d < bestd) {
        bestd = d;
        arg = j;
      }
    }
    used[arg] += 1;
    pairs[i] = from_x ? std::make_pair(static_cast<int>(i), static_cast<int>(arg))
                      : std::make_pair(static_cast<int>(arg), static_cast<int>(i));
  }
  for (int u : used) {
    if (u != 1) return std::nullopt;  // numerically ambiguous borderline case
  }
  return pairs;
}

}  // namespace subsetspace
