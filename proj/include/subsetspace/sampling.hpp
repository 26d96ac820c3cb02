#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subsetspace/fset.hpp"
#include "subsetspace/flow.hpp"
#include "subsetspace/selector.hpp"

/// Seeded, stratified random FSet generation. Every sample is a pure
/// function of (seed, index), so batch runs are schedule-independent.
namespace subsetspace {

struct RunConfig {
  int dim = 2;
  int n = 3;
  double p = 2.0;
  uint64_t seed = 1;
  long samples = 1000;
  double box = 1.0;
  std::string map_id;
  double tau = 7.0;
  SelectorConfig selector{};
  FlowConfig flow{};
  bool include_timing = false;

  NormSpec spec() const { return NormSpec(p, dim); }
};

enum class Stratum { generic, near_x2, thin, clustered, pou_boundary };

inline const char* stratum_name(Stratum s) {
  switch (s) {
    case Stratum::generic: return "generic";
    case Stratum::near_x2: return "near_x2";
    case Stratum::thin: return "thin";
    case Stratum::clustered: return "clustered";
    case Stratum::pou_boundary: return "pou_boundary";
  }
  return "?";
}

namespace detail {

/// Small splitmix-backed generator; cheap to construct per sample.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64(state_ - 0x9e3779b97f4a7c15ULL);
  }

  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Log-uniform over [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return lo * std::pow(hi / lo, uniform());
  }

  int uniform_int(int n) { return static_cast<int>(next_u64() % n); }

  Point point_in_box(int dim, double box) {
    Point q(dim);
    for (int k = 0; k < dim; ++k) q[k] = uniform(-box / 2.0, box / 2.0);
    return q;
  }

  /// Approximately uniform direction (Euclidean); rejection from the cube.
  Point direction(int dim) {
    for (;;) {
      Point q(dim);
      double n2 = 0.0;
      for (int k = 0; k < dim; ++k) {
        q[k] = uniform(-1.0, 1.0);
        n2 += q[k] * q[k];
      }
      if (n2 > 1e-8 && n2 <= 1.0) return vec::scale(q, 1.0 / std::sqrt(n2));
    }
  }

 private:
  uint64_t state_;
};

inline uint64_t sample_seed(uint64_t seed, long index, uint64_t salt) {
  return splitmix64(splitmix64(seed ^ 0x6a09e667f3bcc908ULL) +
                    splitmix64(static_cast<uint64_t>(index) * 2 + salt));
}

}  // namespace detail

/// Deterministic stratified sampler. generic: uniform points in the box;
/// clustered / near_x2: two tight clusters of radius <= box / tau^2;
/// thin: minimum separation forced below diam / 3; pou_boundary: sets whose
/// interpolation parameter sits near the partition-of-unity breakpoints.
inline FSet sample_fset(const RunConfig& cfg, Stratum stratum, long index) {
  detail::Rng rng(detail::sample_seed(cfg.seed, index,
                                      0x51 + static_cast<uint64_t>(stratum)));
  const NormSpec spec = cfg.spec();
  const int n = cfg.n;
  const double box = cfg.box;

  auto generic = [&]() {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.point_in_box(cfg.dim, box));
    return FSet(std::move(pts), n, spec);
  };

  auto two_clusters = [&](double radius) {
    Point c1 = rng.point_in_box(cfg.dim, box);
    Point c2 = rng.point_in_box(cfg.dim, box);
    for (int tries = 0; tries < 64 && dist(c1, c2, spec) < box / 5.0; ++tries) {
      c2 = rng.point_in_box(cfg.dim, box);
    }
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
      const Point& c = (i == 0) ? c1 : (i == 1 ? c2 : (rng.uniform() < 0.5 ? c1 : c2));
      Point off = vec::scale(rng.direction(cfg.dim), radius * rng.uniform());
      pts.push_back(vec::add(c, off));
    }
    return FSet(std::move(pts), n, spec);
  };

  switch (stratum) {
    case Stratum::generic:
      return generic();
    case Stratum::clustered:
    case Stratum::near_x2:
      return two_clusters(box / (cfg.tau * cfg.tau));
    case Stratum::thin: {
      if (n < 3) {
        // delta <= diam/3 is vacuous below three points; emit a tight pair.
        Point a = rng.point_in_box(cfg.dim, box);
        Point off = vec::scale(rng.direction(cfg.dim), box / 20.0 * rng.uniform());
        return FSet({a, vec::add(a, off)}, n, spec);
      }
      // n-1 generic points plus a near-duplicate, so min_sep <= diam / 3.
      std::vector<Point> pts;
      for (int i = 0; i + 1 < n; ++i) pts.push_back(rng.point_in_box(cfg.dim, box));
      double dd = 0.0;
      for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
          dd = std::max(dd, dist(pts[i], pts[j], spec));
        }
      }
      if (dd == 0.0) dd = box;
      const Point& anchor = pts[static_cast<size_t>(rng.uniform_int(
          static_cast<int>(pts.size())))];
      Point off = vec::scale(rng.direction(cfg.dim), dd / 3.0 * rng.uniform());
      pts.push_back(vec::add(anchor, off));
      return FSet(std::move(pts), n, spec);
    }
    case Stratum::pou_boundary: {
      if (n < 3) return generic();
      if (n == 3) {
        // Triples whose min_sep / diam lands near the [1/5, 1/4] ramp.
        for (int tries = 0; tries < 256; ++tries) {
          Point a = rng.point_in_box(cfg.dim, box);
          Point u = rng.direction(cfg.dim);
          double t = box * rng.uniform(0.4, 1.0);
          Point b = vec::add(a, vec::scale(u, t));
          double ds = t * rng.uniform(0.17, 0.28);
          Point c = vec::add(a, vec::scale(rng.direction(cfg.dim), ds));
          FSet x({a, b, c}, n, spec);
          double dm = diam(x);
          if (dm == 0.0) continue;
          double ratio = min_sep(x.with_ambient(3)) / dm;
          if (ratio >= 0.15 && ratio <= 0.30) return x;
        }
        return generic();
      }
      // Two clusters whose dist_H(., X(2)) / diam lands inside the
      // [1/(3 tau), 1/(2 tau)] ramp; cluster Chebyshev radii are pinned by
      // antipodal point pairs and the construction is accepted only when
      // the realized normalized delta is near the ramp.
      const double lo = 1.0 / (3.0 * cfg.tau), hi = 1.0 / (2.0 * cfg.tau);
      for (int tries = 0; tries < 32; ++tries) {
        const double d0 = box * rng.uniform(0.2, 1.0);
        const double target = rng.uniform(0.9 * lo, 1.1 * hi);
        const double rho = target * d0 / (1.0 - 2.0 * target);
        Point c1 = rng.point_in_box(cfg.dim, box);
        Point c2 = vec::add(c1, vec::scale(rng.direction(cfg.dim), d0));
        const int n1 = n / 2;
        std::vector<Point> pts;
        for (int cluster = 0; cluster < 2; ++cluster) {
          const Point& c = cluster == 0 ? c1 : c2;
          const int count = cluster == 0 ? n1 : n - n1;
          Point u = rng.direction(cfg.dim);
          u = vec::scale(u, 1.0 / norm(u, spec));  // ambient-norm unit
          pts.push_back(vec::add(c, vec::scale(u, rho)));
          if (count >= 2) pts.push_back(vec::sub(c, vec::scale(u, rho)));
          for (int extra = 2; extra < count; ++extra) {
            Point w = rng.direction(cfg.dim);
            w = vec::scale(w, rho * rng.uniform(0.0, 0.5) / norm(w, spec));
            pts.push_back(vec::add(c, w));
          }
        }
        FSet x(pts, n, spec);
        if (static_cast<int>(x.size()) != n) continue;
        const double dm = diam(x);
        if (dm <= 0.0) continue;
        const double dn = dist_to_X2(x).radius / dm;
        if (dn >= 0.8 * lo && dn <= 1.25 * hi) return x;
      }
      return two_clusters(box / (cfg.tau * cfg.tau));
    }
  }
  return generic();
}

/// The pair-sampling stratum mix for ratio estimates: 40% generic,
/// 30% clustered, 20% thin, 10% partition-of-unity boundary.
inline Stratum mix_stratum(long pair_index) {
  switch (pair_index % 10) {
    case 0:
    case 1:
    case 2:
    case 3: return Stratum::generic;
    case 4:
    case 5:
    case 6: return Stratum::clustered;
    case 7:
    case 8: return Stratum::thin;
    default: return Stratum::pou_boundary;
  }
}

}  // namespace subsetspace
