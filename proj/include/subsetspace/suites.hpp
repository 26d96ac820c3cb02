#pragma once

// Suite implementations for the verification engine declared in harness.hpp.
// Each check records the worst observed margin and the witness that
// produced it.

namespace subsetspace {

namespace detail {

inline FSet sample_full_cardinality(const RunConfig& cfg, Stratum st, long index) {
  for (int shift = 0; shift < 64; ++shift) {
    FSet x = sample_fset(cfg, st, index + (static_cast<long>(shift) << 40));
    if (static_cast<int>(x.size()) == cfg.n) return x;
  }
  throw std::runtime_error("sample_full_cardinality: sampler keeps collapsing");
}

inline Point random_nonzero(Rng& rng, int dim, double box) {
  for (;;) {
    Point q(dim);
    for (int k = 0; k < dim; ++k) q[k] = rng.uniform(-box / 2.0, box / 2.0);
    if (!vec::is_zero(q)) return q;
  }
}

struct MaxTracker {
  double value = -std::numeric_limits<double>::infinity();
  std::string witness;

  void offer(double v, const std::function<std::string()>& describe) {
    if (v > value) {
      value = v;
      witness = describe();
    }
  }
};

inline CheckRecord margin_check(const std::string& name, const std::string& anchor,
                                long samples, const MaxTracker& t, double tol) {
  return CheckRecord{name, anchor, samples, t.value, t.witness, t.value <= tol};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// normed-core

inline std::vector<CheckRecord> suite_normed_core(const RunConfig& cfg) {
  const double ps[] = {1.0, 1.5, 2.0, 4.0,
                       std::numeric_limits<double>::infinity()};
  detail::MaxTracker quot, order, mono, dunkl, cauchy;
  long used = 0;
  for (double p : ps) {
    const NormSpec spec(p, cfg.dim);
    for (long k = 0; k < cfg.samples; ++k) {
      detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x11));
      Point x = detail::random_nonzero(rng, cfg.dim, cfg.box);
      Point y = detail::random_nonzero(rng, cfg.dim, cfg.box);
      ++used;
      auto describe = [&] {
        nlohmann::json j = {{"p", p_to_json(p)}, {"x", x}, {"y", y}};
        return j.dump();
      };
      const double ny = norm(y, spec);
      const double h = 1e-7;
      const double plus_q = ny * (norm(vec::add(y, vec::scale(x, h)), spec) - ny) / h;
      const double minus_q = ny * (norm(vec::add(y, vec::scale(x, -h)), spec) - ny) / -h;
      const double sp = semi_inner(x, y, Side::plus, spec);
      const double sm = semi_inner(x, y, Side::minus, spec);
      quot.offer(std::max(std::abs(sp - plus_q), std::abs(sm - minus_q)), describe);
      order.offer(sm - sp, describe);
      cauchy.offer(std::max(std::abs(sp), std::abs(sm)) -
                       norm(x, spec) * norm(y, spec),
                   describe);
      if (vec::is_zero(vec::sub(x, y))) continue;
      Point rdiff = vec::sub(radial(x, spec), radial(y, spec));
      Point diff = vec::sub(x, y);
      if (!vec::is_zero(diff)) {
        mono.offer(-semi_inner(rdiff, diff, Side::minus, spec), describe);
        dunkl.offer(norm(rdiff, spec) - 2.0 * norm(diff, spec) /
                                            std::max(norm(x, spec), norm(y, spec)),
                    describe);
      }
    }
  }
  return {
      detail::margin_check("semi_inner matches one-sided difference quotients",
                           "semi-inner-one-sided-derivatives", used, quot, 1e-5),
      detail::margin_check("semi_inner minus <= plus", "semi-inner-ordering", used,
                           order, 0.0),
      detail::margin_check("radial projection semi-monotone",
                           "radial-semi-monotonicity", used, mono, 1e-9),
      detail::margin_check("radial projection Dunkl-Williams bound",
                           "dunkl-williams", used, dunkl, 1e-12),
      detail::margin_check("semi_inner Cauchy-Schwarz bound", "cauchy-schwarz",
                           used, cauchy, 1e-12),
  };
}

// ---------------------------------------------------------------------------
// fset-metric

inline std::vector<CheckRecord> suite_fset_metric(const RunConfig& cfg) {
  std::vector<CheckRecord> out;

  {  // symmetry (exact), identity, triangle inequality
    detail::MaxTracker tri, sym;
    for (long k = 0; k < cfg.samples; ++k) {
      FSet x = sample_fset(cfg, mix_stratum(k), 3 * k);
      FSet y = sample_fset(cfg, mix_stratum(k), 3 * k + 1);
      FSet z = sample_fset(cfg, mix_stratum(k), 3 * k + 2);
      auto describe = [&] { return detail::witness_json(x, y); };
      sym.offer(std::abs(hausdorff(x, y) - hausdorff(y, x)), describe);
      tri.offer(hausdorff(x, z) - hausdorff(x, y) - hausdorff(y, z), describe);
    }
    out.push_back(detail::margin_check("hausdorff symmetry exact",
                                       "hausdorff-metric", cfg.samples, sym, 0.0));
    out.push_back(detail::margin_check("hausdorff triangle inequality",
                                       "hausdorff-metric", cfg.samples, tri, 1e-12));
  }

  {  // delta and diam are 2-Lipschitz on full-cardinality pairs
    detail::MaxTracker dl, dm;
    for (long k = 0; k < cfg.samples; ++k) {
      FSet x = detail::sample_full_cardinality(cfg, mix_stratum(k), 2 * k);
      FSet y = detail::sample_full_cardinality(cfg, mix_stratum(k), 2 * k + 1);
      auto describe = [&] { return detail::witness_json(x, y); };
      const double h = hausdorff(x, y);
      dl.offer(std::abs(min_sep(x) - min_sep(y)) - 2.0 * h, describe);
      dm.offer(std::abs(diam(x) - diam(y)) - 2.0 * h, describe);
    }
    out.push_back(detail::margin_check("min separation 2-Lipschitz",
                                       "min-separation-2-lipschitz", cfg.samples,
                                       dl, 1e-12));
    out.push_back(detail::margin_check("diameter 2-Lipschitz", "diam-2-lipschitz",
                                       cfg.samples, dm, 1e-12));
  }

  {  // dist_to_X2 witness: feasibility and one-sided optimality
    detail::MaxTracker feas, opt;
    const long outer = std::max<long>(1, cfg.samples / 100);
    for (long k = 0; k < outer; ++k) {
      FSet x = sample_fset(cfg, (k % 2 == 0) ? Stratum::generic : Stratum::near_x2,
                           k);
      TwoCenterWitness w = dist_to_X2(x);
      auto describe = [&] { return detail::witness_json(x); };
      for (size_t i = 0; i < x.size(); ++i) {
        feas.offer(dist(x.points()[i], w.centers[w.partition[i] %
                                                 w.centers.size()],
                        x.spec()) -
                       w.radius,
                   describe);
      }
      detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x22));
      for (int z = 0; z < 1000; ++z) {
        std::vector<Point> zp = {rng.point_in_box(cfg.dim, 2.0 * cfg.box)};
        if (rng.uniform() < 0.7) zp.push_back(rng.point_in_box(cfg.dim, 2.0 * cfg.box));
        FSet zs(zp, 2, x.spec());
        opt.offer(w.radius - hausdorff(x, zs), describe);
      }
    }
    out.push_back(detail::margin_check("dist_to_X2 witness covers x",
                                       "dist-to-x2", outer, feas, 1e-9));
    out.push_back(detail::margin_check("dist_to_X2 optimal vs random X(2)",
                                       "dist-to-x2", outer * 1000, opt, 1e-9));
  }

  {  // engineered proximal bijections
    detail::MaxTracker prox;
    long made = 0;
    for (long k = 0; k < cfg.samples; ++k) {
      FSet x = detail::sample_full_cardinality(cfg, Stratum::generic, 2 * k);
      const double d0 = min_sep(x);
      if (d0 <= 0.0) continue;
      detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x23));
      FSet y = detail::perturb(x, rng, 0.45 * d0);
      if (y.size() != x.size()) continue;
      ++made;
      auto bij = proximal_bijection(x, y);
      auto describe = [&] { return detail::witness_json(x, y); };
      if (!bij) {
        prox.offer(std::numeric_limits<double>::infinity(), describe);
        continue;
      }
      const double h = hausdorff(x, y);
      std::vector<int> seen(x.size(), 0);
      for (auto [i, j] : *bij) {
        seen[j] += 1;
        prox.offer(dist(x.points()[i], y.points()[j], x.spec()) - h, describe);
      }
      for (int s : seen) {
        if (s != 1) prox.offer(std::numeric_limits<double>::infinity(), describe);
      }
    }
    out.push_back(detail::margin_check("engineered proximal bijections",
                                       "proximal-bijection", made, prox, 1e-12));
  }

  return out;
}

// ---------------------------------------------------------------------------
// relations

namespace detail {

inline Relation random_complete_relation(Rng& rng, int nx, int ny) {
  std::vector<std::pair<int, int>> pairs;
  const double q = rng.uniform(0.15, 0.6);
  for (int a = 0; a < nx; ++a) {
    for (int b = 0; b < ny; ++b) {
      if (rng.uniform() < q) pairs.emplace_back(a, b);
    }
  }
  std::vector<char> la(nx, 0), rb(ny, 0);
  for (auto [a, b] : pairs) {
    la[a] = 1;
    rb[b] = 1;
  }
  for (int a = 0; a < nx; ++a) {
    if (!la[a]) pairs.emplace_back(a, rng.uniform_int(ny));
  }
  for (int b = 0; b < ny; ++b) {
    if (!rb[b]) pairs.emplace_back(rng.uniform_int(nx), b);
  }
  return Relation(std::move(pairs), nx, ny);
}

/// Brute-force maximum matching by DFS augmentation (tiny bipartite graphs).
inline int brute_max_matching(const Relation& r) {
  std::vector<std::vector<int>> adj(r.left_size());
  for (auto [a, b] : r.pairs()) adj[a].push_back(b);
  std::vector<int> match_b(r.right_size(), -1);
  std::function<bool(int, std::vector<char>&)> try_kuhn =
      [&](int a, std::vector<char>& vis) {
        for (int b : adj[a]) {
          if (vis[b]) continue;
          vis[b] = 1;
          if (match_b[b] < 0 || try_kuhn(match_b[b], vis)) {
            match_b[b] = a;
            return true;
          }
        }
        return false;
      };
  int matched = 0;
  for (int a = 0; a < r.left_size(); ++a) {
    std::vector<char> vis(r.right_size(), 0);
    if (try_kuhn(a, vis)) ++matched;
  }
  return matched;
}

/// Exhaustive enumeration of all reduced complete subrelations (only for
/// small |R|): subsets that are complete with every pair essential.
inline std::vector<std::vector<std::pair<int, int>>> enumerate_reduced(
    const Relation& r) {
  const auto& pairs = r.pairs();
  const size_t m = pairs.size();
  std::vector<std::vector<std::pair<int, int>>> found;
  for (uint64_t mask = 1; mask < (1ULL << m); ++mask) {
    std::vector<std::pair<int, int>> sub;
    for (size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1ULL) sub.push_back(pairs[i]);
    }
    Relation s(sub, r.left_size(), r.right_size());
    if (is_reduced(s)) found.push_back(s.pairs());
  }
  return found;
}

}  // namespace detail

inline std::vector<CheckRecord> suite_relations(const RunConfig& cfg) {
  detail::MaxTracker idem, redq, size_bound, member, roundtrip;
  long brute_checked = 0;
  for (long k = 0; k < cfg.samples; ++k) {
    detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x31));
    const int nx = 1 + rng.uniform_int(5);
    const int ny = 1 + rng.uniform_int(5);
    Relation r = detail::random_complete_relation(rng, nx, ny);
    Relation red = reduce(r);
    auto describe = [&] {
      nlohmann::json j = {{"nx", nx}, {"ny", ny}, {"pairs", r.pairs()}};
      return j.dump();
    };
    idem.offer(reduce(red) == red ? 0.0 : 1.0, describe);
    bool ok = is_reduced(red);
    for (auto q : red.pairs()) {
      if (!r.contains(q)) ok = false;
    }
    redq.offer(ok ? 0.0 : 1.0, describe);

    const int cap = std::max(std::max(nx, ny), nx + ny - 2);
    const int min_cover = nx + ny - detail::brute_max_matching(r);
    size_bound.offer(static_cast<double>(static_cast<int>(red.size()) - cap),
                     describe);
    size_bound.offer(static_cast<double>(min_cover - static_cast<int>(red.size())),
                     describe);

    if (r.size() <= 14) {
      ++brute_checked;
      auto all = detail::enumerate_reduced(r);
      bool present = false;
      for (const auto& cand : all) {
        if (cand == red.pairs()) present = true;
      }
      member.offer(present ? 0.0 : 1.0, describe);
    }

    Decomposition dec = decompose(red);
    bool rt = reassemble(dec, nx, ny) == red;
    // partition and surjectivity invariants
    rt = rt && (dec.x_prime.size() + dec.x_dprime.size() == static_cast<size_t>(nx));
    rt = rt && (dec.y_prime.size() + dec.y_dprime.size() == static_cast<size_t>(ny));
    std::set<int> fimg, gimg;
    for (auto [a, b] : dec.f) fimg.insert(b);
    for (auto [b, a] : dec.g) gimg.insert(a);
    rt = rt && fimg == std::set<int>(dec.y_prime.begin(), dec.y_prime.end());
    rt = rt && gimg == std::set<int>(dec.x_dprime.begin(), dec.x_dprime.end());
    roundtrip.offer(rt ? 0.0 : 1.0, describe);
  }
  return {
      detail::margin_check("reduce is idempotent", "relation-reduction",
                           cfg.samples, idem, 0.0),
      detail::margin_check("reduce output reduced-complete subrelation",
                           "relation-reduction", cfg.samples, redq, 0.0),
      detail::margin_check("reduced size within bound and above minimum",
                           "reduced-relation-size", cfg.samples, size_bound, 0.0),
      detail::margin_check("reduce output found by brute-force enumeration",
                           "relation-reduction", brute_checked, member, 0.0),
      detail::margin_check("decompose reassembles exactly",
                           "reduced-relation-decomposition", cfg.samples, roundtrip,
                           0.0),
  };
}

// ---------------------------------------------------------------------------
// paths

namespace detail {

/// Max over a time grid of d_H(g(t), g(t')) - lambda |t-t'| d_H(x,y).
inline double grid_modulus_violation(const QuasiPath& gamma, double lambda,
                                     double endpoint_dist, int grid) {
  std::vector<FSet> evals;
  evals.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    evals.push_back(gamma.eval(static_cast<double>(i) / (grid - 1)));
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    for (int j = i + 1; j < grid; ++j) {
      const double dt = static_cast<double>(j - i) / (grid - 1);
      worst = std::max(worst, hausdorff(evals[i], evals[j]) -
                                  lambda * dt * endpoint_dist);
    }
  }
  return worst;
}

/// Max |d_H(g(t), g(t')) - |t-t'| d_H| over the grid (geodesic identity).
inline double grid_geodesic_violation(const QuasiPath& gamma, double endpoint_dist,
                                      int grid) {
  std::vector<FSet> evals;
  evals.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    evals.push_back(gamma.eval(static_cast<double>(i) / (grid - 1)));
  }
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = i + 1; j < grid; ++j) {
      const double dt = static_cast<double>(j - i) / (grid - 1);
      worst = std::max(worst, std::abs(hausdorff(evals[i], evals[j]) -
                                       dt * endpoint_dist));
    }
  }
  return worst;
}

/// The separated windows of the spaced-pair construction with their cover
/// quotas; any z within r < 1 of both endpoints would need n+1 points.
inline bool spaced_window_quota_fails(const FSet& z, int n, double m,
                                      const Point& direction, double r) {
  const NormSpec& spec = z.spec();
  std::vector<std::pair<std::vector<double>, int>> windows;
  windows.push_back({{-1.0, 0.0, 1.0}, 2});
  windows.push_back({{m - 1.0, m, m + 1.0}, 2});
  for (int k = 3; k <= n - 1; ++k) {
    windows.push_back({{(k - 1) * m + 1.0, (k - 1) * m + 2.0}, 1});
  }
  for (const auto& [coords, quota] : windows) {
    int count = 0;
    for (const Point& q : z.points()) {
      double dmin = std::numeric_limits<double>::infinity();
      for (double c : coords) {
        dmin = std::min(dmin, dist(q, vec::scale(direction, c), spec));
      }
      if (dmin <= r) ++count;
    }
    if (count < quota) return true;  // this window misses its quota
  }
  return false;
}

}  // namespace detail

inline std::vector<CheckRecord> suite_paths(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  const int grid = 101;

  {  // 2-quasigeodesic modulus on random pairs
    detail::MaxTracker mod;
    for (long k = 0; k < cfg.samples; ++k) {
      FSet x = sample_fset(cfg, mix_stratum(k), 2 * k);
      FSet y = sample_fset(cfg, mix_stratum(k), 2 * k + 1);
      const double h = hausdorff(x, y);
      if (h < 1e-12) continue;
      QuasiPath g = quasigeodesic(x, y);
      mod.offer(detail::grid_modulus_violation(g, 2.0, h, grid),
                [&] { return detail::witness_json(x, y); });
    }
    out.push_back(detail::margin_check("quasigeodesic 2-modulus on grid",
                                       "quasiconvexity-2", cfg.samples, mod, 1e-9));
  }

  {  // relation-leg modulus with the leg's own stretch constant
    detail::MaxTracker mod;
    for (long k = 0; k < cfg.samples / 4 + 1; ++k) {
      FSet x = sample_fset(cfg, mix_stratum(k), 2 * k);
      FSet y = sample_fset(cfg, mix_stratum(k), 2 * k + 1);
      const double h = hausdorff(x, y);
      if (h < 1e-12) continue;
      Relation red = reduce(proximal_relation(x, y));
      const int cap = std::max<int>(
          {static_cast<int>(x.size()), static_cast<int>(y.size()),
           static_cast<int>(x.size() + y.size()) - 2});
      QuasiPath g = path_from_relation(x.with_ambient(cap), y.with_ambient(cap),
                                       red, cap);
      double lambda = 0.0;
      for (auto [i, j] : red.pairs()) {
        lambda = std::max(lambda,
                          dist(x.points()[i], y.points()[j], x.spec()) / h);
      }
      mod.offer(detail::grid_modulus_violation(g, lambda, h, grid),
                [&] { return detail::witness_json(x, y); });
    }
    out.push_back(detail::margin_check("relation-leg modulus on grid",
                                       "relation-quasigeodesic",
                                       cfg.samples / 4 + 1, mod, 1e-9));
  }

  {  // X(2) geodesic identity and geodesics in the larger ambient
    detail::MaxTracker x2geo, larger;
    RunConfig cfg2 = cfg;
    cfg2.n = 2;
    for (long k = 0; k < cfg.samples / 4 + 1; ++k) {
      FSet x = sample_fset(cfg2, Stratum::generic, 2 * k);
      FSet y = sample_fset(cfg2, Stratum::generic, 2 * k + 1);
      const double h = hausdorff(x, y);
      if (h < 1e-12) continue;
      x2geo.offer(detail::grid_geodesic_violation(quasigeodesic(x, y), h, grid),
                  [&] { return detail::witness_json(x, y); });
      FSet xn = sample_fset(cfg, mix_stratum(k), 4 * k + 2);
      FSet yn = sample_fset(cfg, mix_stratum(k), 4 * k + 3);
      const double hn = hausdorff(xn, yn);
      if (hn < 1e-12) continue;
      larger.offer(
          detail::grid_geodesic_violation(geodesic_in_larger(xn, yn), hn, grid),
          [&] { return detail::witness_json(xn, yn); });
    }
    out.push_back(detail::margin_check("X(2) geodesic identity", "x2-geodesic",
                                       cfg.samples / 4 + 1, x2geo, 1e-9));
    out.push_back(detail::margin_check("geodesic identity in larger ambient",
                                       "geodesic-larger-ambient",
                                       cfg.samples / 4 + 1, larger, 1e-9));
  }

  {  // spaced pairs: defining property, sharpness, window quotas, length
    detail::MaxTracker spaced, sharp, quota, len;
    const double m = 4.0;
    Point dir = vec::zero(cfg.dim);
    dir[0] = 1.0;
    const NormSpec spec = cfg.spec();
    for (int n = 3; n <= 8; ++n) {
      auto [x, y] = spaced_pair(n, m, dir, spec);
      auto describe = [&] { return detail::witness_json(x, y); };
      const double h = hausdorff(x, y);
      spaced.offer(std::abs(h - 1.0), describe);
      detail::Rng rng(detail::sample_seed(cfg.seed, n, 0x41));
      const double lo = -2.0, hi = (n - 2) * m + 3.0;
      for (long z = 0; z < std::max<long>(cfg.samples, 1000); ++z) {
        std::vector<Point> zp;
        const int zn = 1 + rng.uniform_int(n);
        for (int i = 0; i < zn; ++i) {
          Point q = vec::zero(cfg.dim);
          for (int c = 0; c < cfg.dim; ++c) q[c] = rng.uniform(lo, hi);
          zp.push_back(q);
        }
        FSet zs(zp, n, spec);
        spaced.offer(h - std::max(hausdorff(x, zs), hausdorff(zs, y)) - 1e-12,
                     describe);
      }
      QuasiPath g = quasigeodesic(x, y);
      FSet mid = g.eval(0.5);
      const double lambda_implied =
          2.0 * std::max(hausdorff(x, mid), hausdorff(mid, y)) / h;
      sharp.offer(2.0 - 1e-6 - lambda_implied, describe);
      quota.offer(detail::spaced_window_quota_fails(mid, n, m, dir, 1.0 - 1e-6)
                      ? 0.0
                      : 1.0,
                  describe);
      const double l512 = path_length(g, 512);
      const double l1024 = path_length(g, 1024);
      len.offer(std::abs(l1024 - l512) - 1e-9, describe);
      len.offer(std::abs(l1024 - 2.0 * h) - 1e-6, describe);
    }
    out.push_back(detail::margin_check("spaced pair defining property",
                                       "spaced-pairs", 6, spaced, 1e-12));
    out.push_back(detail::margin_check("spaced midpoint forces lambda >= 2",
                                       "quasiconvexity-sharpness", 6, sharp, 0.0));
    out.push_back(detail::margin_check("spaced window quotas unmeetable",
                                       "spaced-pairs", 6, quota, 0.0));
    out.push_back(detail::margin_check("path length stable under refinement",
                                       "path-length", 6, len, 0.0));
  }

  return out;
}

// ---------------------------------------------------------------------------
// selector

inline std::vector<CheckRecord> suite_selector(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  const NormSpec spec = cfg.spec();

  {  // membership and affine equivariance on random sets
    detail::MaxTracker member, affine;
    for (long k = 0; k < cfg.samples; ++k) {
      FSet x = sample_fset(cfg, mix_stratum(k), k);
      Point s = steiner_point(x, cfg.selector);
      HullProjection prj = hull_project(s, x.points());
      auto describe = [&] { return detail::witness_json(x); };
      double wsum = 0.0, wmin = 0.0;
      for (double wgt : prj.weights) {
        wsum += wgt;
        wmin = std::min(wmin, wgt);
      }
      member.offer(dist(s, prj.proj, spec), describe);
      member.offer(std::abs(wsum - 1.0), describe);
      member.offer(-wmin, describe);

      detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x51));
      const double t = rng.uniform(0.3, 3.0);
      Point v = rng.point_in_box(cfg.dim, cfg.box);
      std::vector<Point> mapped;
      for (const Point& q : x.points()) {
        mapped.push_back(vec::add(vec::scale(q, t), v));
      }
      FSet tx(mapped, x.ambient_n(), spec);
      Point left = steiner_point(tx, cfg.selector);
      Point right = vec::add(vec::scale(steiner_point(x, cfg.selector), t), v);
      affine.offer(dist(left, right, spec), describe);
    }
    out.push_back(detail::margin_check("steiner point in convex hull",
                                       "steiner-selector", cfg.samples, member,
                                       1e-9));
    out.push_back(detail::margin_check("selector affine equivariance",
                                       "steiner-selector", cfg.samples, affine,
                                       1e-9));
  }

  {  // hull contraction under the support-sampling distance
    detail::MaxTracker hull;
    for (long k = 0; k < cfg.samples; ++k) {
      FSet x = sample_fset(cfg, mix_stratum(k), 2 * k);
      FSet y = sample_fset(cfg, mix_stratum(k), 2 * k + 1);
      hull.offer(hull_hausdorff_support(x, y, cfg.selector) - hausdorff(x, y),
                 [&] { return detail::witness_json(x, y); });
    }
    out.push_back(detail::margin_check("convex hull contracts Hausdorff distance",
                                       "hull-contraction", cfg.samples, hull,
                                       1e-9));
  }

  {  // empirical Lipschitz ratio: finite and stable under sample doubling
    RunConfig lip = cfg;
    lip.map_id = "selector";
    RatioEstimate est = estimate_lipschitz("selector", lip);
    const double stability =
        (est.max_at_half > 0.0)
            ? (est.max_ratio - est.max_at_half) / est.max_at_half
            : 0.0;
    CheckRecord c = detail::ratio_check("selector empirical Lipschitz ratio",
                                        "selector-lipschitz", est,
                                        std::numeric_limits<double>::infinity());
    // the doubling drift is only meaningful once the estimator has samples
    c.pass = std::isfinite(est.max_ratio) && (est.used < 1000 || stability < 0.05);
    c.name += " (recorded max " + std::to_string(est.max_ratio) + ", drift " +
              std::to_string(stability) + ")";
    out.push_back(std::move(c));
  }

  return out;
}

// ---------------------------------------------------------------------------
// retractions

inline std::vector<CheckRecord> suite_r2(const RunConfig& cfg) {
  RunConfig c2 = cfg;
  c2.n = 2;
  RatioEstimate est = estimate_lipschitz("r2", c2);
  detail::MaxTracker ident;
  for (long k = 0; k < std::min<long>(cfg.samples, 1000); ++k) {
    detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x61));
    FSet x({rng.point_in_box(cfg.dim, cfg.box)}, 2, cfg.spec());
    ident.offer(hausdorff(r2(x), x), [&] { return detail::witness_json(x); });
  }
  return {
      detail::ratio_check("r2 Lipschitz ratio <= 1", "avg-retraction-1-lipschitz",
                          est, 1.0 + 1e-9),
      detail::margin_check("r2 identity on singletons",
                           "avg-retraction-1-lipschitz",
                           std::min<long>(cfg.samples, 1000), ident, 0.0),
  };
}

namespace detail {

/// Normalized central triple with min separation steered into [lo, hi].
inline std::optional<NormalizedCentral> sample_strip_triple(Rng& rng,
                                                            const NormSpec& spec,
                                                            double lo, double hi) {
  for (int tries = 0; tries < 256; ++tries) {
    Point a = vec::zero(spec.dim);
    Point u = rng.direction(spec.dim);
    Point b = vec::scale(u, 1.0);
    const double target = rng.uniform(lo, hi);
    const Point anchor = (rng.uniform() < 0.5) ? a : b;
    Point c = vec::add(anchor, vec::scale(rng.direction(spec.dim), target));
    FSet x({a, b, c}, 3, spec);
    if (x.size() != 3) continue;
    NormalizedCentral nc = NormalizedCentral::from(x);
    const double d = min_sep(nc.base.with_ambient(3));
    if (d >= lo && d <= hi) return nc;
  }
  return std::nullopt;
}

}  // namespace detail

inline std::vector<CheckRecord> suite_r3(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  RunConfig c3 = cfg;
  c3.n = 3;

  {
    RatioEstimate est = estimate_lipschitz("r3", c3);
    out.push_back(detail::ratio_check("r3 Lipschitz ratio <= 731",
                                      "x3-retraction-731", est, 731.0));
  }

  {  // identity on X(2) representatives
    detail::MaxTracker ident;
    RunConfig c2 = cfg;
    c2.n = 2;
    for (long k = 0; k < std::min<long>(cfg.samples, 2000); ++k) {
      FSet x = sample_fset(c2, Stratum::generic, k).with_ambient(3);
      ident.offer(hausdorff(r3(x), x), [&] { return detail::witness_json(x); });
    }
    out.push_back(detail::margin_check("r3 identity on X(2)", "x3-retraction-731",
                                       std::min<long>(cfg.samples, 2000), ident,
                                       1e-12));
  }

  {  // per-strip ratios of the interpolation core on normalized central triples
    struct Strip {
      double lo, hi, limit;
      const char* label;
    };
    const Strip strips[] = {{1e-4, 0.2, 3.0, "delta <= 1/5"},
                            {1.0 / 6.0, 1.0 / 3.0, 44.0, "1/6 <= delta <= 1/3"},
                            {0.25, 0.9, 9.0, "delta >= 1/4"}};
    const long per_strip = std::max<long>(cfg.samples / 3, 100);
    for (const Strip& st : strips) {
      detail::MaxTracker ratio;
      long used = 0;
      for (long k = 0; k < per_strip; ++k) {
        detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x62));
        auto nx = detail::sample_strip_triple(rng, cfg.spec(), st.lo, st.hi);
        auto ny = detail::sample_strip_triple(rng, cfg.spec(), st.lo, st.hi);
        if (!nx || !ny) continue;
        const double h = hausdorff(nx->base, ny->base);
        if (h < 1e-12) continue;
        ++used;
        ratio.offer(hausdorff(interp3(*nx), interp3(*ny)) / h - st.limit, [&] {
          return detail::witness_json(nx->base, ny->base);
        });
      }
      out.push_back(detail::margin_check(
          std::string("interpolation strip ratio, ") + st.label,
          "thin-interpolation-strips", used, ratio, 1e-6));
    }
  }

  {  // d_H(f(x), x) <= delta(x)/2 on thin triples
    detail::MaxTracker prox;
    long used = 0;
    for (long k = 0; k < std::min<long>(cfg.samples, 2000); ++k) {
      detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x63));
      auto nc = detail::sample_strip_triple(rng, cfg.spec(), 1e-4, 1.0 / 3.0);
      if (!nc) continue;
      ++used;
      const auto lab = thin_label({nc->base.points()[0], nc->base.points()[1],
                                   nc->base.points()[2]},
                                  cfg.spec());
      FSet f({vec::scale(vec::add(lab[0], lab[1]), 0.5), lab[2]}, 2, cfg.spec());
      prox.offer(hausdorff(f, nc->base) - 0.5 * min_sep(nc->base.with_ambient(3)),
                 [&] { return detail::witness_json(nc->base); });
    }
    out.push_back(detail::margin_check("thin map stays near its input",
                                       "thin-map-proximity", used, prox, 1e-12));
  }

  {  // homogeneous extension does not depend on the chosen base point
    detail::MaxTracker wd;
    for (long k = 0; k < std::min<long>(cfg.samples, 500); ++k) {
      FSet x = detail::sample_full_cardinality(c3, mix_stratum(k), k);
      const double t = diam(x);
      if (t <= 0.0) continue;
      FSet ref = r3(x);
      auto describe = [&] { return detail::witness_json(x); };
      for (const Point& v : x.points()) {
        std::vector<Point> shifted;
        for (const Point& q : x.points()) {
          shifted.push_back(vec::scale(vec::sub(q, v), 1.0 / t));
        }
        FSet base(shifted, 3, cfg.spec());
        FSet core = interp3(NormalizedCentral{base, t, v, false});
        std::vector<Point> mapped;
        for (const Point& q : core.points()) {
          mapped.push_back(vec::add(vec::scale(q, t), v));
        }
        wd.offer(hausdorff(FSet(mapped, 2, cfg.spec()), ref), describe);
      }
    }
    out.push_back(detail::margin_check("extension invariant to base point",
                                       "homogeneous-extension",
                                       std::min<long>(cfg.samples, 500), wd, 1e-9));
  }

  return out;
}

inline std::vector<CheckRecord> suite_rn2(const RunConfig& cfg) {
  std::vector<CheckRecord> out;

  {  // identity on X(2) and affine equivariance
    detail::MaxTracker ident, affine;
    RunConfig c2 = cfg;
    c2.n = 2;
    const long count = std::min<long>(cfg.samples, 1000);
    for (long k = 0; k < count; ++k) {
      FSet x2 = sample_fset(c2, Stratum::generic, k).with_ambient(cfg.n);
      ident.offer(hausdorff(rn2(x2, cfg.tau, cfg.selector), x2),
                  [&] { return detail::witness_json(x2); });

      FSet x = sample_fset(cfg, mix_stratum(k), k);
      detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x71));
      const double t = rng.uniform(0.3, 3.0);
      Point v = rng.point_in_box(cfg.dim, cfg.box);
      std::vector<Point> mapped;
      for (const Point& q : x.points()) {
        mapped.push_back(vec::add(vec::scale(q, t), v));
      }
      FSet tx(mapped, x.ambient_n(), cfg.spec());
      FSet left = rn2(tx, cfg.tau, cfg.selector);
      FSet right_core = rn2(x, cfg.tau, cfg.selector);
      std::vector<Point> right;
      for (const Point& q : right_core.points()) {
        right.push_back(vec::add(vec::scale(q, t), v));
      }
      affine.offer(hausdorff(left, FSet(right, 2, cfg.spec())),
                   [&] { return detail::witness_json(x); });
    }
    out.push_back(detail::margin_check("rn2 identity on X(2)", "xn-x2-retraction",
                                       count, ident, 1e-9));
    out.push_back(detail::margin_check("rn2 affine equivariance",
                                       "xn-x2-retraction", count, affine, 1e-9));
  }

  {  // recorded empirical Lipschitz ratio with stability under doubling
    RatioEstimate est = estimate_lipschitz("rn2", cfg);
    const double stability =
        (est.max_at_half > 0.0)
            ? (est.max_ratio - est.max_at_half) / est.max_at_half
            : 0.0;
    CheckRecord c = detail::ratio_check("rn2 empirical Lipschitz ratio",
                                        "xn-x2-retraction", est,
                                        std::numeric_limits<double>::infinity());
    // the doubling drift is only meaningful once the estimator has samples
    c.pass = std::isfinite(est.max_ratio) && (est.used < 1000 || stability < 0.05);
    c.name += " (recorded max " + std::to_string(est.max_ratio) + ", drift " +
              std::to_string(stability) + ")";
    out.push_back(std::move(c));
  }

  return out;
}

// ---------------------------------------------------------------------------
// flow

inline std::vector<CheckRecord> suite_flow(const RunConfig& cfg) {
  std::vector<CheckRecord> out;
  const double tol_T = std::max(1e-6, 10.0 * cfg.flow.eps_coll);
  // decay-rate checks lean on one-sided derivatives of a smooth norm; runs
  // at p in {1, inf} are exploratory and skip them
  const bool smooth_p = cfg.p > 1.0 && !std::isinf(cfg.p);

  {  // closed forms in R^1
    const NormSpec s1(cfg.p, 1);
    detail::MaxTracker closed;
    FSet two({{0.0}, {1.0}}, 2, s1);
    FlowResult a = integrate_to_collision(two, cfg.flow);
    closed.offer(std::abs(a.T - 0.5) - tol_T, [&] { return detail::witness_json(two); });
    closed.offer(hausdorff(a.retract, FSet({{0.5}}, 1, s1)) - tol_T,
                 [&] { return detail::witness_json(two); });
    FSet three({{-1.0}, {0.0}, {1.0}}, 3, s1);
    FlowResult b = integrate_to_collision(three, cfg.flow);
    closed.offer(std::abs(b.T - 0.5) - tol_T,
                 [&] { return detail::witness_json(three); });
    closed.offer(hausdorff(b.retract, FSet({{0.0}}, 2, s1)) - tol_T,
                 [&] { return detail::witness_json(three); });
    out.push_back(detail::margin_check("closed-form collisions in R^1",
                                       "collision-closed-forms", 2, closed, 0.0));
  }

  {  // sandwich, decay, proximity, speed bound on random instances
    detail::MaxTracker sandwich, decay, prox, speed;
    const long count = std::max<long>(cfg.samples / 10, 20);
    for (long k = 0; k < count; ++k) {
      FSet x = detail::sample_full_cardinality(cfg, Stratum::generic, k);
      if (min_sep(x) < 1e-6) continue;
      auto [lo, hi] = collision_time_bounds(x);
      FlowConfig fc = cfg.flow;
      fc.record_trajectory = true;
      FlowResult r = integrate_to_collision(x, fc);
      auto describe = [&] { return detail::witness_json(x); };
      sandwich.offer(lo - r.T - tol_T, describe);
      sandwich.offer(r.T - hi - tol_T, describe);
      const double d0 = min_sep(x);
      for (const FlowTraceRow& row : r.trace) {
        decay.offer(row.closest_pair - (d0 - 2.0 * row.t) - 1e-6, describe);
      }
      prox.offer(hausdorff(r.retract, x) -
                     (cfg.n - 1) * d0 / 2.0 - 1e-6,
                 describe);
      for (size_t s = 0; s + 1 < r.snapshots.size(); ++s) {
        const auto& [t0, u0] = r.snapshots[s];
        const auto& [t1, u1] = r.snapshots[s + 1];
        for (size_t i = 0; i < u0.size(); ++i) {
          speed.offer(dist(u0[i], u1[i], x.spec()) -
                          (cfg.n - 1) * (t1 - t0) * (1.0 + 1e-9) - 1e-12,
                      describe);
        }
      }
    }
    out.push_back(detail::margin_check("collision time sandwich",
                                       "collision-time-sandwich", count, sandwich,
                                       0.0));
    if (smooth_p) {
      out.push_back(detail::margin_check("closest pair decays at rate 2",
                                         "closest-pair-decay", count, decay, 0.0));
    }
    out.push_back(detail::margin_check("retract proximity to start",
                                       "collision-retract-proximity", count, prox,
                                       0.0));
    out.push_back(detail::margin_check("per-step speed bound", "flow-speed-bound",
                                       count, speed, 0.0));
  }

  {  // time translation: restart from the configuration at T/2
    detail::MaxTracker trans;
    const long count = std::max<long>(cfg.samples / 40, 5);
    for (long k = 0; k < count; ++k) {
      FSet x = detail::sample_full_cardinality(cfg, Stratum::generic, k + 7777);
      if (min_sep(x) < 1e-6) continue;
      FlowResult r = integrate_to_collision(x, cfg.flow);
      const double tau = r.T / 2.0;
      std::vector<Point> mid = integrate_until(x, tau, cfg.flow);
      FSet midset(mid, cfg.n, x.spec());
      if (static_cast<int>(midset.size()) != cfg.n) continue;
      FlowResult rr = integrate_to_collision(midset, cfg.flow);
      trans.offer(std::abs(r.T - tau - rr.T) - 1e-5,
                  [&] { return detail::witness_json(x); });
    }
    out.push_back(detail::margin_check("restarted flow collides on schedule",
                                       "flow-time-translation", count, trans, 0.0));
  }

  if (smooth_p) {  // two-flow contraction diagnostic along paired trajectories
    detail::MaxTracker twof;
    const long count = std::max<long>(cfg.samples / 40, 5);
    const NormSpec spec = cfg.spec();
    for (long k = 0; k < count; ++k) {
      FSet x = detail::sample_full_cardinality(cfg, Stratum::generic, k + 555);
      detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x81));
      FSet y = detail::perturb(x, rng, 0.2 * min_sep(x));
      if (y.size() != x.size() || min_sep(x) < 1e-6 || min_sep(y) < 1e-6) continue;
      std::vector<Point> u = x.points(), v = y.points();
      auto bij = proximal_bijection(x, y);
      if (bij) {
        std::vector<Point> vv(v.size());
        for (auto [i, j] : *bij) vv[i] = y.points()[j];
        v = vv;
      }
      auto gsum = [&] {
        double s = 0.0;
        for (size_t i = 0; i < u.size(); ++i) s += dist(u[i], v[i], spec);
        return s;
      };
      const double g0 = gsum();
      double t = 0.0;
      auto describe = [&] { return detail::witness_json(x, y); };
      for (long step = 0; step < cfg.flow.max_steps; ++step) {
        const double du = detail::tuple_min_sep(u, spec);
        const double dv = detail::tuple_min_sep(v, spec);
        const double dmin = std::min(du, dv);
        if (dmin <= cfg.flow.eps_coll) break;
        const double h = cfg.flow.theta * dmin / (4.0 * (cfg.n - 1));
        detail::rk4_step(u, h, spec);
        detail::rk4_step(v, h, spec);
        t += h;
        twof.offer(gsum() - g0 - 2.0 * (cfg.n - 1) * t - 1e-6, describe);
      }
    }
    out.push_back(detail::margin_check("paired flows separate at bounded rate",
                                       "two-flow-contraction", count, twof, 0.0));
  }

  {  // the trajectory stays in the affine span of the initial set
    detail::MaxTracker span;
    const NormSpec s3(cfg.p, 3);
    detail::Rng rng(detail::sample_seed(cfg.seed, 99, 0x82));
    std::vector<Point> pts;
    const double zlevel = 0.7;
    for (int i = 0; i < 3; ++i) {
      pts.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), zlevel});
    }
    FSet planar(pts, 3, s3);
    FlowResult r = integrate_to_collision(planar, cfg.flow);
    for (const Point& q : r.terminal) {
      span.offer(std::abs(q[2] - zlevel), [&] { return detail::witness_json(planar); });
    }
    out.push_back(detail::margin_check("flow stays in the affine span",
                                       "flow-affine-span", 1, span, 1e-9));
  }

  return out;
}

inline std::vector<CheckRecord> suite_flow_holder(const RunConfig& cfg) {
  RatioEstimate est = estimate_holder(cfg);
  return {detail::ratio_check("Holder estimate against the explicit bound",
                              "holder-estimate", est, 1.05)};
}

}  // namespace subsetspace
