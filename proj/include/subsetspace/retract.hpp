#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "subsetspace/fset.hpp"
#include "subsetspace/selector.hpp"

/// Concrete retractions between finite subset spaces: Avg for X(2) -> X,
/// thin-set interpolation for X(3) -> X(2), the 2-thin skeleton
/// interpolation for X(n) -> X(2), and the homogeneous-extension combinator
/// that upgrades a map on normalized central sets to an affine retraction.
namespace subsetspace {

inline Point avg(const FSet& x) {
  Point m = vec::zero(x.spec().dim);
  for (const Point& p : x.points()) m = vec::add(m, p);
  return vec::scale(m, 1.0 / static_cast<double>(x.size()));
}

/// The 1-Lipschitz retraction X(2) -> X.
inline FSet r2(const FSet& x) {
  if (x.size() > 2) {
    throw std::invalid_argument("r2: input must have at most 2 points");
  }
  return FSet({avg(x)}, 1, x.spec());
}

/// A normalized central representative: x = t x0 + v with diam(x0) = 1 and
/// 0 in x0, plus the provenance needed to undo the normalization. The t = 0
/// ray (singletons) is flagged degenerate instead.
struct NormalizedCentral {
  FSet base;
  double scale = 1.0;
  Point offset;
  bool degenerate = false;

  static NormalizedCentral from(const FSet& x) {
    const double t = diam(x);
    if (t == 0.0) {
      return NormalizedCentral{FSet({vec::zero(x.spec().dim)}, x.ambient_n(), x.spec()),
                               0.0, x.points()[0], true};
    }
    const Point v = x.points()[0];  // canonical order puts the lex-min first
    std::vector<Point> pts;
    pts.reserve(x.size());
    for (const Point& p : x.points()) {
      pts.push_back(vec::scale(vec::sub(p, v), 1.0 / t));
    }
    return NormalizedCentral{FSet(std::move(pts), x.ambient_n(), x.spec()), t, v,
                             false};
  }

  /// t x0 + v.
  FSet reproduce() const {
    std::vector<Point> pts;
    for (const Point& p : base.points()) {
      pts.push_back(vec::add(vec::scale(p, scale), offset));
    }
    return FSet(std::move(pts), base.ambient_n(), base.spec());
  }
};

/// Two clamped ramps with phi1 + phi2 = 1, blending two candidate maps over
/// the strip [lo, hi].
struct PartitionOfUnity {
  double lo;
  double hi;

  PartitionOfUnity(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(0.0 < lo && lo < hi)) {
      throw std::invalid_argument("PartitionOfUnity: need 0 < lo < hi");
    }
  }

  std::pair<double, double> eval(double t) const {
    double phi1;
    if (t <= lo) {
      phi1 = 1.0;
    } else if (t >= hi) {
      phi1 = 0.0;
    } else {
      phi1 = (hi - t) / (hi - lo);
    }
    return {phi1, 1.0 - phi1};
  }
};

/// Labels a normalized triple (as a multiset, so a doubled point encodes a
/// 2-point set) so that d(x1,x2) <= d(x2,x3) <= d(x1,x3) = 1. Ties are broken
/// lexicographically; the vertex V(x) is x3.
inline std::array<Point, 3> thin_label(std::array<Point, 3> pts, const NormSpec& spec) {
  const double d01 = dist(pts[0], pts[1], spec);
  const double d02 = dist(pts[0], pts[2], spec);
  const double d12 = dist(pts[1], pts[2], spec);
  const double dm = std::max(std::max(d01, d02), d12);
  if (std::abs(dm - 1.0) > 1e-12) {
    throw std::invalid_argument("thin_label: multiset must be normalized (diam 1)");
  }
  struct Cand {
    int i, j, k;
    double dpair;
  };
  std::array<Cand, 3> cands = {Cand{0, 1, 2, d01}, Cand{0, 2, 1, d02},
                               Cand{1, 2, 0, d12}};
  // Prefer the smallest pair distance; on ties the lexicographically
  // smallest (sorted) point pair.
  std::sort(cands.begin(), cands.end(), [&pts](const Cand& a, const Cand& b) {
    if (a.dpair != b.dpair) return a.dpair < b.dpair;
    const Point& alo = vec::lex_less(pts[a.i], pts[a.j]) ? pts[a.i] : pts[a.j];
    const Point& blo = vec::lex_less(pts[b.i], pts[b.j]) ? pts[b.i] : pts[b.j];
    if (alo != blo) return vec::lex_less(alo, blo);
    const Point& ahi = vec::lex_less(pts[a.i], pts[a.j]) ? pts[a.j] : pts[a.i];
    const Point& bhi = vec::lex_less(pts[b.i], pts[b.j]) ? pts[b.j] : pts[b.i];
    return vec::lex_less(ahi, bhi);
  });
  const Cand& c = cands[0];
  Point vertex = pts[c.k];
  Point a = pts[c.i];
  Point b = pts[c.j];
  const double da = dist(a, vertex, spec);
  const double db = dist(b, vertex, spec);
  // x2 is the pair element nearer the vertex; on ties x1 is the lex-smaller.
  if (da > db || (da == db && vec::lex_less(a, b))) std::swap(a, b);
  return {b, a, vertex};
}

inline std::pair<double, double> pou_eval(const PartitionOfUnity& pou, double t) {
  return pou.eval(t);
}

/// Interpolation map of X(3) on normalized central sets:
/// R = phi1(delta) {mid(x1,x2), x3} + phi2(delta) {Avg(x)} with delta the
/// minimum separation in ambient X(3). The phi1 = 0 branch skips the thin
/// labeling entirely, where it would be ill-conditioned.
inline FSet interp3(const NormalizedCentral& nc) {
  if (nc.degenerate) {
    throw std::invalid_argument("interp3: degenerate (singleton) input");
  }
  const FSet& x0 = nc.base;
  const NormSpec& spec = x0.spec();
  const double delta = min_sep(x0.with_ambient(3));
  const auto [phi1, phi2] = PartitionOfUnity(1.0 / 5.0, 1.0 / 4.0).eval(delta);
  if (phi1 == 0.0) {
    return FSet({avg(x0)}, 2, spec);
  }
  std::array<Point, 3> multiset;
  if (x0.size() == 3) {
    multiset = {x0.points()[0], x0.points()[1], x0.points()[2]};
  } else if (x0.size() == 2) {
    multiset = {x0.points()[0], x0.points()[0], x0.points()[1]};
  } else {
    throw std::invalid_argument("interp3: normalized set must have 2 or 3 points");
  }
  const auto lab = thin_label(multiset, spec);
  const Point mid = vec::scale(vec::add(lab[0], lab[1]), 0.5);
  if (phi2 == 0.0) {
    return FSet({mid, lab[2]}, 2, spec);
  }
  const Point m = avg(x0);
  return FSet({vec::add(vec::scale(mid, phi1), vec::scale(m, phi2)),
               vec::add(vec::scale(lab[2], phi1), vec::scale(m, phi2))},
              2, spec);
}

/// Homogeneous Lipschitz extension r(t x0 + v) = t R(x0) + v of a
/// translation-invariant core defined on normalized central sets.
template <typename Core>
inline FSet homogeneous_extend(Core&& core, const FSet& x, int codomain_n) {
  const NormalizedCentral nc = NormalizedCentral::from(x);
  if (nc.degenerate) {
    return x.with_ambient(codomain_n);
  }
  const FSet ry = core(nc);
  std::vector<Point> pts;
  pts.reserve(ry.size());
  for (const Point& p : ry.points()) {
    pts.push_back(vec::add(vec::scale(p, nc.scale), nc.offset));
  }
  return FSet(std::move(pts), codomain_n, x.spec());
}

/// The Lipschitz retraction X(3) -> X(2) (constant 731 = 6*121 + 5).
inline FSet r3(const FSet& x) {
  if (x.size() > 3) {
    throw std::invalid_argument("r3: input must have at most 3 points");
  }
  return homogeneous_extend([](const NormalizedCentral& nc) { return interp3(nc); },
                            x.with_ambient(3), 2);
}

/// The unique (2/tau, 1-4/tau)-decomposition of a 2-thin normalized set,
/// built from the dist_H(x, X(2)) witness pair. The cluster holding the
/// lexicographically smallest point comes first.
inline std::pair<std::vector<Point>, std::vector<Point>> cluster_decompose(
    const NormalizedCentral& nc, double tau) {
  if (!(tau > 6.0)) {
    throw std::invalid_argument("cluster_decompose: tau must be > 6");
  }
  const TwoCenterWitness w = dist_to_X2(nc.base);
  if (!(w.radius < 1.0 / tau)) {
    throw std::invalid_argument("cluster_decompose: set is not 2-thin for this tau");
  }
  std::vector<Point> a, b;
  for (size_t i = 0; i < nc.base.size(); ++i) {
    (w.partition[i] == 0 ? a : b).push_back(nc.base.points()[i]);
  }
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("cluster_decompose: degenerate witness partition");
  }
  return {a, b};
}

/// Interpolation map X(n) -> X(2) on normalized central sets:
/// R = phi1(delta) {s(x'), s(x'')} + phi2(delta) {s(x)} with
/// delta = dist_H(x, X(2)) and breakpoints 1/(3 tau), 1/(2 tau).
inline FSet interp_n(const NormalizedCentral& nc, double tau = 7.0,
                     const SelectorConfig& cfg = {}) {
  if (nc.degenerate) {
    throw std::invalid_argument("interp_n: degenerate (singleton) input");
  }
  if (!(tau > 6.0)) {
    throw std::invalid_argument("interp_n: tau must be > 6");
  }
  const FSet& x0 = nc.base;
  const NormSpec& spec = x0.spec();
  const double delta = dist_to_X2(x0).radius;
  const auto [phi1, phi2] =
      PartitionOfUnity(1.0 / (3.0 * tau), 1.0 / (2.0 * tau)).eval(delta);
  if (phi1 == 0.0) {
    return FSet({steiner_point(x0, cfg)}, 2, spec);
  }
  const auto [ca, cb] = cluster_decompose(nc, tau);
  const Point sa = steiner_point(FSet(ca, static_cast<int>(ca.size()), spec), cfg);
  const Point sb = steiner_point(FSet(cb, static_cast<int>(cb.size()), spec), cfg);
  if (phi2 == 0.0) {
    return FSet({sa, sb}, 2, spec);
  }
  const Point s = steiner_point(x0, cfg);
  return FSet({vec::add(vec::scale(sa, phi1), vec::scale(s, phi2)),
               vec::add(vec::scale(sb, phi1), vec::scale(s, phi2))},
              2, spec);
}

/// The Lipschitz retraction X(n) -> X(2).
inline FSet rn2(const FSet& x, double tau = 7.0, const SelectorConfig& cfg = {}) {
  return homogeneous_extend(
      [tau, &cfg](const NormalizedCentral& nc) { return interp_n(nc, tau, cfg); }, x,
      2);
}

}  // namespace subsetspace
