#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include "subsetspace/fset.hpp"

/// A concrete affine Lipschitz selector X(n) -> X: the Steiner point of
/// Conv(x), computed by deterministic antithetic quadrature of the support
/// function over the Euclidean sphere.
namespace subsetspace {

struct SelectorConfig {
  int sphere_samples = 4096;
  uint64_t seed = 0x5e1ec70bULL;

  SelectorConfig() = default;
  SelectorConfig(int samples, uint64_t seed_) : sphere_samples(samples), seed(seed_) {
    if (sphere_samples < 1000) {
      throw std::invalid_argument("SelectorConfig: sphere_samples must be >= 1000");
    }
  }
};

namespace detail {

/// Acklam's rational approximation of the inverse normal CDF
/// (relative error below 1.2e-9, ample for quadrature directions).
inline double inverse_normal_cdf(double u) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (u < plow) {
    double q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (u > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - u));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = u - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

inline std::vector<Point> make_sphere_directions(int dim, int samples,
                                                 uint64_t seed) {
  std::vector<Point> dirs;
  if (dim == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  }
  int n = samples + (samples % 2);  // antithetic pairs need an even count
  dirs.reserve(n);
  if (dim == 2) {
    const double rot =
        2.0 * std::numbers::pi * (splitmix64(seed) >> 11) * 0x1.0p-53;
    const int half = n / 2;
    for (int k = 0; k < half; ++k) {
      // Equal-angle grid over the half circle; the mirrored mate follows.
      double th = std::numbers::pi * (k + 0.5) / half + rot;
      Point u = {std::cos(th), std::sin(th)};
      dirs.push_back(u);
      dirs.push_back({-u[0], -u[1]});
    }
    return dirs;
  }
  // Halton points with a Cranley-Patterson rotation, mapped through the
  // inverse normal CDF and normalized onto the sphere.
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (dim > static_cast<int>(std::size(primes))) {
    throw std::invalid_argument("sphere_directions: dimension too large");
  }
  std::vector<double> shift(dim);
  uint64_t s = seed;
  for (int j = 0; j < dim; ++j) {
    s = splitmix64(s);
    shift[j] = (s >> 11) * 0x1.0p-53;
  }
  const int half = n / 2;
  for (int k = 0; k < half; ++k) {
    Point u(dim);
    double norm2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      // radical inverse of k+1 in base primes[j]
      double f = 1.0, r = 0.0;
      int v = k + 1;
      while (v > 0) {
        f /= primes[j];
        r += f * (v % primes[j]);
        v /= primes[j];
      }
      double t = r + shift[j];
      t -= std::floor(t);
      t = std::min(std::max(t, 1e-12), 1.0 - 1e-12);
      u[j] = inverse_normal_cdf(t);
      norm2 += u[j] * u[j];
    }
    if (norm2 == 0.0) {
      u[0] = 1.0;
      norm2 = 1.0;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (int j = 0; j < dim; ++j) u[j] *= inv;
    dirs.push_back(u);
    dirs.push_back(vec::scale(u, -1.0));
  }
  return dirs;
}

}  // namespace detail

/// Deterministic antithetic direction set on the Euclidean unit sphere,
/// cached per (dim, samples, seed) and shared read-only.
inline const std::vector<Point>& sphere_directions(int dim, int samples,
                                                   uint64_t seed) {
  using Key = std::tuple<int, int, uint64_t>;
  static std::mutex mu;
  static std::map<Key, std::unique_ptr<std::vector<Point>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[Key{dim, samples, seed}];
  if (!slot) {
    slot = std::make_unique<std::vector<Point>>(
        detail::make_sphere_directions(dim, samples, seed));
  }
  return *slot;
}

/// Euclidean projection onto the convex hull of a point set, with the
/// convex-combination certificate.
struct HullProjection {
  Point proj;
  std::vector<double> weights;
  double dist = 0.0;  // Euclidean distance from the query to the hull
};

namespace detail {

/// Equality-constrained least squares on a candidate support: minimize
/// ||sum a_i p_i - q|| subject to sum a_i = 1, via the KKT system. Returns
/// false when the Gram system is singular (affinely dependent support).
inline bool face_solve(const Point& q, const std::vector<Point>& pts,
                       const std::vector<size_t>& support,
                       std::vector<double>& alpha) {
  const size_t k = support.size();
  const size_t n = k + 1;
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  double scale = 1e-300;
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      a[i][j] = vec::dot(pts[support[i]], pts[support[j]]);
      scale = std::max(scale, std::abs(a[i][j]));
    }
    a[i][k] = 1.0;
    a[k][i] = 1.0;
    a[i][n] = vec::dot(pts[support[i]], q);
  }
  a[k][n] = 1.0;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) <= 1e-13 * (scale + 1.0)) return false;
    std::swap(a[piv], a[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  alpha.resize(k);
  for (size_t i = 0; i < k; ++i) alpha[i] = a[i][n] / a[i][i];
  return true;
}

}  // namespace detail

/// The optimal support has at most d+1 points (Caratheodory), so every
/// candidate face is solved exactly and the best feasible one wins.
inline HullProjection hull_project(const Point& q, const std::vector<Point>& pts) {
  const size_t m = pts.size();
  const size_t dim = q.size();
  const size_t max_support = std::min(m, dim + 1);
  HullProjection out;
  out.weights.assign(m, 0.0);
  double best = std::numeric_limits<double>::infinity();

  std::vector<size_t> support;
  std::vector<double> alpha;
  auto consider = [&]() {
    if (support.size() == 1) {
      const double d2 = detail::dist2_euclid(q, pts[support[0]]);
      if (d2 < best) {
        best = d2;
        out.weights.assign(m, 0.0);
        out.weights[support[0]] = 1.0;
      }
      return;
    }
    if (!detail::face_solve(q, pts, support, alpha)) return;
    for (double a : alpha) {
      if (a < -1e-12) return;  // leaves the face; a smaller support covers it
    }
    Point y = vec::zero(static_cast<int>(dim));
    for (size_t i = 0; i < support.size(); ++i) {
      y = vec::add(y, vec::scale(pts[support[i]], alpha[i]));
    }
    const double d2 = detail::dist2_euclid(q, y);
    if (d2 < best) {
      best = d2;
      out.weights.assign(m, 0.0);
      for (size_t i = 0; i < support.size(); ++i) {
        out.weights[support[i]] = std::max(alpha[i], 0.0);
      }
    }
  };

  std::function<void(size_t)> enumerate = [&](size_t next) {
    if (!support.empty()) consider();
    if (support.size() == max_support) return;
    for (size_t i = next; i < m; ++i) {
      support.push_back(i);
      enumerate(i + 1);
      support.pop_back();
    }
  };
  enumerate(0);

  double tot = 0.0;
  for (double w : out.weights) tot += w;
  Point y = vec::zero(static_cast<int>(dim));
  for (size_t i = 0; i < m; ++i) {
    out.weights[i] /= tot;
    y = vec::add(y, vec::scale(pts[i], out.weights[i]));
  }
  out.proj = y;
  out.dist = std::sqrt(detail::dist2_euclid(out.proj, q));
  return out;
}

/// Steiner point of Conv(x): d times the quadrature mean of h(u) u over the
/// antithetic direction set, evaluated with the centroid translated to the
/// origin and translated back (exact translation equivariance). The result
/// is snapped into the hull when quadrature noise pushes it outside.
inline Point steiner_point(const FSet& x, const SelectorConfig& cfg = {}) {
  const int d = x.spec().dim;
  const auto& pts = x.points();
  Point centroid = vec::zero(d);
  for (const Point& p : pts) centroid = vec::add(centroid, p);
  centroid = vec::scale(centroid, 1.0 / static_cast<double>(pts.size()));
  if (pts.size() == 1) return pts[0];

  std::vector<Point> w(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) w[i] = vec::sub(pts[i], centroid);

  Point acc = vec::zero(d);
  if (d == 1) {
    double lo = w[0][0], hi = w[0][0];
    for (const Point& p : w) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    acc[0] = lo + (hi - lo) / 2.0;
  } else {
    const auto& dirs = sphere_directions(d, cfg.sphere_samples, cfg.seed);
    auto support = [&w](const Point& u) {
      double h = -std::numeric_limits<double>::infinity();
      for (const Point& p : w) h = std::max(h, vec::dot(p, u));
      return h;
    };
    // Sum each antithetic pair first so that symmetric supports cancel.
    for (size_t k = 0; k + 1 < dirs.size(); k += 2) {
      double h1 = support(dirs[k]);
      double h2 = support(dirs[k + 1]);
      for (int j = 0; j < d; ++j) {
        acc[j] += h1 * dirs[k][j] + h2 * dirs[k + 1][j];
      }
    }
    acc = vec::scale(acc, static_cast<double>(d) / static_cast<double>(dirs.size()));
  }

  Point s = vec::add(acc, centroid);
  double scale = 1.0;
  for (const Point& p : w) scale = std::max(scale, std::sqrt(vec::dot(p, p)));
  HullProjection prj = hull_project(s, pts);
  if (prj.dist > 1e-12 * scale) return prj.proj;
  return s;
}

/// The selector as a retraction X(n) -> X(1); exact identity on singletons.
inline FSet selector_retraction(const FSet& x, const SelectorConfig& cfg = {}) {
  return FSet({steiner_point(x, cfg)}, 1, x.spec());
}

/// Hausdorff distance between convex hulls estimated by support-function
/// sampling over the shared direction set (a lower bound on the true value).
inline double hull_hausdorff_support(const FSet& x, const FSet& y,
                                     const SelectorConfig& cfg = {}) {
  check_same_spec(x, y);
  const int d = x.spec().dim;
  const double q = x.spec().dual_exponent();
  const NormSpec dual_spec(std::isinf(q) ? std::numeric_limits<double>::infinity() : q,
                           d);
  auto support = [](const FSet& s, const Point& u) {
    double h = -std::numeric_limits<double>::infinity();
    for (const Point& p : s.points()) h = std::max(h, vec::dot(p, u));
    return h;
  };
  double best = 0.0;
  if (d == 1) {
    for (const Point& u : {Point{1.0}, Point{-1.0}}) {
      best = std::max(best, std::abs(support(x, u) - support(y, u)));
    }
    return best;
  }
  for (const Point& u : sphere_directions(d, cfg.sphere_samples, cfg.seed)) {
    double gap = std::abs(support(x, u) - support(y, u)) / norm(u, dual_spec);
    best = std::max(best, gap);
  }
  return best;
}

}  // namespace subsetspace
