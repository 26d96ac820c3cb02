#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "subsetspace/normed.hpp"

/// Chebyshev center of a finite point set under the ambient p-norm:
/// minimize c -> max_i ||c - x_i||. Closed forms for d = 1 and p = inf,
/// Welzl's miniball for p = 2, ellipsoid cutting otherwise.
namespace subsetspace {

namespace detail {

inline double dist2_euclid(const Point& a, const Point& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

/// Circumsphere center of affinely independent support points (all on the
/// boundary). Gaussian elimination on the Gram system; returns false when
/// the support is affinely dependent beyond tolerance.
inline bool circumsphere(const std::vector<Point>& sup, Point& center) {
  const size_t k = sup.size();
  center = sup[0];
  if (k == 1) return true;
  const size_t m = k - 1;
  std::vector<std::vector<double>> g(m, std::vector<double>(m + 1, 0.0));
  std::vector<Point> e(m);
  for (size_t i = 0; i < m; ++i) e[i] = vec::sub(sup[i + 1], sup[0]);
  double scale = 0.0;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      g[i][j] = vec::dot(e[i], e[j]);
      scale = std::max(scale, std::abs(g[i][j]));
    }
    g[i][m] = 0.5 * g[i][i];
  }
  if (scale == 0.0) return false;
  const double tol = 1e-12 * scale;
  for (size_t col = 0; col < m; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < m; ++r) {
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    }
    if (std::abs(g[piv][col]) <= tol) return false;
    std::swap(g[piv], g[col]);
    for (size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      double f = g[r][col] / g[col][col];
      for (size_t c = col; c <= m; ++c) g[r][c] -= f * g[col][c];
    }
  }
  for (size_t i = 0; i < m; ++i) {
    double lambda = g[i][m] / g[i][i];
    for (size_t c = 0; c < center.size(); ++c) center[c] += lambda * e[i][c];
  }
  return true;
}

struct Ball {
  Point center;
  double r2 = -1.0;
  bool ok = true;
};

inline Ball ball_of_support(const std::vector<Point>& sup, int dim) {
  Ball b;
  if (sup.empty()) {
    b.center = vec::zero(dim);
    b.r2 = -1.0;
    return b;
  }
  if (!circumsphere(sup, b.center)) {
    b.ok = false;
    return b;
  }
  b.r2 = dist2_euclid(b.center, sup[0]);
  return b;
}

inline Ball welzl(std::vector<Point>& pts, size_t i, std::vector<Point>& sup,
                  int dim) {
  if (i == 0 || sup.size() == static_cast<size_t>(dim) + 1) {
    return ball_of_support(sup, dim);
  }
  Ball b = welzl(pts, i - 1, sup, dim);
  if (!b.ok) return b;
  const Point& q = pts[i - 1];
  if (dist2_euclid(q, b.center) <= b.r2 * (1.0 + 1e-12) + 1e-300) return b;
  sup.push_back(q);
  Ball b2 = welzl(pts, i - 1, sup, dim);
  sup.pop_back();
  return b2;
}

inline uint64_t splitmix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Minimum enclosing Euclidean ball. ok = false when degenerate supports
/// defeated the circumsphere solves (caller falls back to the ellipsoid
/// path).
inline Ball miniball(const std::vector<Point>& points, int dim) {
  std::vector<Point> pts = points;
  // Deterministic shuffle for the expected-linear behavior of the recursion.
  uint64_t s = 0x5eedULL;
  for (size_t i = pts.size(); i > 1; --i) {
    s = splitmix64(s);
    std::swap(pts[i - 1], pts[s % i]);
  }
  std::vector<Point> sup;
  return welzl(pts, pts.size(), sup, dim);
}

/// Euclidean-unit subgradient of c -> ||c - far||_p at w = c - far != 0.
inline Point pnorm_subgradient(const Point& w, const NormSpec& spec) {
  Point g(w.size(), 0.0);
  if (spec.p == 1.0) {
    for (size_t i = 0; i < w.size(); ++i) {
      g[i] = (w[i] > 0.0) ? 1.0 : (w[i] < 0.0 ? -1.0 : 0.0);
    }
  } else if (spec.is_inf()) {
    double m = 0.0;
    size_t arg = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      if (std::abs(w[i]) > m) {
        m = std::abs(w[i]);
        arg = i;
      }
    }
    g[arg] = std::copysign(1.0, w[arg]);
  } else {
    double nw = norm(w, spec);
    for (size_t i = 0; i < w.size(); ++i) {
      double a = std::abs(w[i]) / nw;
      g[i] = std::copysign(std::pow(a, spec.p - 1.0), w[i]);
      if (w[i] == 0.0) g[i] = 0.0;
    }
  }
  double n2 = std::sqrt(vec::dot(g, g));
  if (n2 > 0.0) g = vec::scale(g, 1.0 / n2);
  return g;
}

inline double max_dist_from(const Point& c, const std::vector<Point>& pts,
                            const NormSpec& spec, size_t* argmax = nullptr) {
  double best = -1.0;
  size_t arg = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    double d = dist(c, pts[i], spec);
    if (d > best) {
      best = d;
      arg = i;
    }
  }
  if (argmax) *argmax = arg;
  return best;
}

/// Ellipsoid cutting-plane minimization of the max-distance objective, kept
/// in square-root form P = L L^T so the rank-one downdates stay positive
/// definite. Reaches objective tolerance ~1e-12 well inside the iteration
/// cap for the small dimensions used here.
inline std::pair<Point, double> cheb_ellipsoid(const std::vector<Point>& pts,
                                               const NormSpec& spec,
                                               int max_iters = 10000) {
  const int d = spec.dim;
  Point c = vec::zero(d);
  double f0 = max_dist_from(c, pts, spec);
  if (f0 == 0.0) return {c, 0.0};
  const double r0 = std::sqrt(static_cast<double>(d)) * f0 * 1.01 + 1e-300;
  std::vector<std::vector<double>> L(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i) L[i][i] = r0;
  Point best_c = c;
  double best_f = f0;
  const double dd = static_cast<double>(d);
  const double grow = std::sqrt(dd * dd / (dd * dd - 1.0));
  const double gamma = 1.0 - std::sqrt(1.0 - 2.0 / (dd + 1.0));
  for (int k = 0; k < max_iters; ++k) {
    size_t far;
    double f = max_dist_from(c, pts, spec, &far);
    if (f < best_f) {
      best_f = f;
      best_c = c;
    }
    Point g = pnorm_subgradient(vec::sub(c, pts[far]), spec);
    Point v(d, 0.0);  // v = L^T g
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) v[j] += L[i][j] * g[i];
    }
    double sq = std::sqrt(vec::dot(v, v));
    if (sq <= 1e-13 * (f0 + 1.0)) break;
    Point vhat = vec::scale(v, 1.0 / sq);
    Point lv(d, 0.0);  // L vhat
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) lv[i] += L[i][j] * vhat[j];
    }
    for (int i = 0; i < d; ++i) c[i] -= lv[i] / (dd + 1.0);
    // L <- grow * (L - gamma (L vhat) vhat^T)
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        L[i][j] = grow * (L[i][j] - gamma * lv[i] * vhat[j]);
      }
    }
  }
  return {best_c, best_f};
}

}  // namespace detail

/// Chebyshev center and radius of a nonempty point set, translated so the
/// centroid sits at the origin during the solve.
inline std::pair<Point, double> cheb_center(const std::vector<Point>& points,
                                            const NormSpec& spec) {
  if (points.empty()) {
    throw std::invalid_argument("cheb_center: empty point set");
  }
  const int d = spec.dim;
  if (points.size() == 1) return {points[0], 0.0};

  Point centroid = vec::zero(d);
  for (const Point& q : points) centroid = vec::add(centroid, q);
  centroid = vec::scale(centroid, 1.0 / static_cast<double>(points.size()));
  std::vector<Point> w(points.size());
  for (size_t i = 0; i < points.size(); ++i) w[i] = vec::sub(points[i], centroid);

  Point c;
  if (d == 1) {
    double lo = w[0][0], hi = w[0][0];
    for (const Point& q : w) {
      lo = std::min(lo, q[0]);
      hi = std::max(hi, q[0]);
    }
    c = {lo + (hi - lo) / 2.0};
  } else if (spec.is_inf()) {
    c = vec::zero(d);
    for (int k = 0; k < d; ++k) {
      double lo = w[0][k], hi = w[0][k];
      for (const Point& q : w) {
        lo = std::min(lo, q[k]);
        hi = std::max(hi, q[k]);
      }
      c[k] = lo + (hi - lo) / 2.0;
    }
  } else if (spec.p == 2.0) {
    detail::Ball b = detail::miniball(w, d);
    if (b.ok) {
      c = b.center;
    } else {
      c = detail::cheb_ellipsoid(w, spec).first;
    }
  } else {
    c = detail::cheb_ellipsoid(w, spec).first;
  }

  Point center = vec::add(c, centroid);
  double radius = detail::max_dist_from(center, points, spec);
  return {center, radius};
}

}  // namespace subsetspace
