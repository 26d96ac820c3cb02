// Acceptance suite: every release criterion at full scale, one PASS/FAIL
// line per criterion. Exit code 0 iff all criteria hold.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "subsetspace/harness.hpp"

using namespace subsetspace;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass;
  std::string detail;
};

FSet detail_sample_full(const RunConfig& cfg, long index) {
  return detail::sample_full_cardinality(cfg, mix_stratum(index), index);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return std::string(buf);
}

// criterion 1: r2 is 1-Lipschitz over 1e5 pairs in R^3 for p in {1, 2, inf},
// within 30 s.
Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double p : {1.0, 2.0, kInf}) {
    RunConfig cfg;
    cfg.n = 2;
    cfg.dim = 3;
    cfg.p = p;
    cfg.samples = 100000;
    cfg.seed = 101;
    RatioEstimate est = estimate_lipschitz("r2", cfg);
    worst = std::max(worst, est.max_ratio);
  }
  const double secs = seconds_since(t0);
  const bool pass = worst <= 1.0 + 1e-9 && secs < 30.0;
  return {pass, fmt("max ratio %.12f over 3x1e5 pairs in R^3, %.1f s", worst, secs)};
}

// criterion 2: r3 bound 731, exact identity on X(2), strip constants {3,44,9}.
Outcome criterion2() {
  RunConfig cfg;
  cfg.n = 3;
  cfg.dim = 2;
  cfg.p = 2.0;
  cfg.samples = 10000;
  cfg.seed = 102;
  std::vector<CheckRecord> checks = suite_r3(cfg);
  bool pass = true;
  double maxr = 0.0;
  for (const CheckRecord& c : checks) {
    pass = pass && c.pass;
    if (c.name.find("731") != std::string::npos) maxr = c.max_ratio;
  }
  return {pass, fmt("max ratio %.3f of 731 over 1e4 stratified pairs; "
                    "identity and strips within tolerance: %s",
                    maxr, pass ? "yes" : "NO")};
}

// criterion 3: rn2 identity/equivariance at 1e-9 and a stable recorded
// Lipschitz constant for n in {4, 5, 6}.
Outcome criterion3() {
  bool pass = true;
  std::string detail;
  for (int n : {4, 5, 6}) {
    RunConfig cfg;
    cfg.n = n;
    cfg.dim = 2;
    cfg.p = 2.0;
    cfg.samples = 10000;
    cfg.seed = 103;
    cfg.selector = SelectorConfig(2048, 9);
    std::vector<CheckRecord> checks = suite_rn2(cfg);
    for (const CheckRecord& c : checks) pass = pass && c.pass;
    RatioEstimate est = estimate_lipschitz("rn2", cfg);
    const double drift = (est.max_at_half > 0.0)
                             ? (est.max_ratio - est.max_at_half) / est.max_at_half
                             : 0.0;
    pass = pass && std::isfinite(est.max_ratio) && drift < 0.05;
    detail += fmt("n=%d max %.2f drift %.3f; ", n, est.max_ratio, drift);
  }
  return {pass, detail};
}

// criterion 4: collision-flow closed forms, the time sandwich on 1e3 random
// instances over n in {3,4,5}, and the time-translation identity.
Outcome criterion4() {
  bool pass = true;
  std::string detail;
  {
    const NormSpec s1(2.0, 1);
    FlowResult a = integrate_to_collision(FSet({{0.0}, {1.0}}, 2, s1));
    FlowResult b = integrate_to_collision(FSet({{-1.0}, {0.0}, {1.0}}, 3, s1));
    const bool closed =
        std::abs(a.T - 0.5) <= 1e-6 &&
        hausdorff(a.retract, FSet({{0.5}}, 1, s1)) <= 1e-6 &&
        std::abs(b.T - 0.5) <= 1e-6 &&
        hausdorff(b.retract, FSet({{0.0}}, 2, s1)) <= 1e-6;
    pass = pass && closed;
    detail += fmt("closed forms T=%.7f/%.7f; ", a.T, b.T);
  }
  long done = 0;
  double worst_gap = -kInf, worst_trans = -kInf;
  for (int n : {3, 4, 5}) {
    RunConfig cfg;
    cfg.n = n;
    cfg.dim = 2;
    cfg.p = 2.0;
    cfg.seed = 104;
    for (long k = 0; k < 334; ++k) {
      FSet x = detail_sample_full(cfg, k);
      if (min_sep(x) < 1e-6) continue;
      auto [lo, hi] = collision_time_bounds(x);
      FlowResult r = integrate_to_collision(x, cfg.flow);
      worst_gap = std::max(worst_gap, lo - r.T);
      worst_gap = std::max(worst_gap, r.T - hi);
      ++done;
      if (k % 10 == 0) {
        const double tau = r.T / 2.0;
        FSet mid(integrate_until(x, tau, cfg.flow), n, x.spec());
        if (static_cast<int>(mid.size()) == n) {
          FlowResult rr = integrate_to_collision(mid, cfg.flow);
          worst_trans = std::max(worst_trans, std::abs(r.T - tau - rr.T));
        }
      }
    }
  }
  pass = pass && worst_gap <= 1e-6 && worst_trans <= 1e-5;
  detail += fmt("sandwich gap %.2e over %ld runs; translation gap %.2e",
                worst_gap, done, worst_trans);
  return {pass, detail};
}

// criterion 5: the Holder estimate within 5% slack plus the proximity bound
// on every integration; under 10 minutes.
Outcome criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  double worst_ratio = 0.0, worst_prox = -kInf;
  for (int n : {3, 4, 5}) {
    for (double p : {2.0, 4.0}) {
      RunConfig cfg;
      cfg.n = n;
      cfg.dim = 2;
      cfg.p = p;
      cfg.samples = 1000;
      cfg.seed = 105;
      const NormSpec spec = cfg.spec();
      long used = 0;
      for (long k = 0; k < cfg.samples; ++k) {
        FSet x = sample_fset(cfg, Stratum::generic, 2 * k);
        if (static_cast<int>(x.size()) != n) continue;
        detail::Rng rng(detail::sample_seed(cfg.seed, 2 * k + 1, 0xcd));
        double eta = rng.log_uniform(1e-3, 1.0);
        FSet y = detail::perturb(x, rng, eta);
        double h = hausdorff(x, y);
        for (int tries = 0; tries < 8 && (h < 1e-3 || h > 1.0); ++tries) {
          eta *= (h < 1e-3) ? 4.0 : 0.25;
          y = detail::perturb(x, rng, eta);
          h = hausdorff(x, y);
        }
        if (h < 1e-3 || h > 1.0 || static_cast<int>(y.size()) != n) continue;
        FSet rx = holder_retraction(x, cfg.flow);
        FSet ry = holder_retraction(y, cfg.flow);
        worst_ratio = std::max(worst_ratio,
                               hausdorff(rx, ry) / holder_bound(x, y));
        worst_prox = std::max(
            worst_prox, hausdorff(rx, x) - (n - 1) * min_sep(x) / 2.0);
        worst_prox = std::max(
            worst_prox, hausdorff(ry, y) - (n - 1) * min_sep(y) / 2.0);
        ++used;
        (void)spec;
      }
      pass = pass && used > 800;
    }
  }
  const double secs = seconds_since(t0);
  pass = pass && worst_ratio <= 1.05 && worst_prox <= 1e-6 && secs < 600.0;
  return {pass, fmt("max ratio-to-bound %.4f, proximity gap %.2e, %.1f s",
                    worst_ratio, worst_prox, secs)};
}

// criterion 6: 2-quasigeodesic grid modulus, X(2) geodesy, spaced-pair
// sharpness and the spaced defining property.
Outcome criterion6() {
  bool pass = true;
  std::string detail;
  double worst_mod = -kInf;
  for (int n : {3, 4, 5, 6}) {
    RunConfig cfg;
    cfg.n = n;
    cfg.dim = 2;
    cfg.p = 2.0;
    cfg.seed = 106;
    for (long k = 0; k < 250; ++k) {
      FSet x = sample_fset(cfg, mix_stratum(k), 2 * k);
      FSet y = sample_fset(cfg, mix_stratum(k), 2 * k + 1);
      const double h = hausdorff(x, y);
      if (h < 1e-12) continue;
      worst_mod = std::max(worst_mod, detail::grid_modulus_violation(
                                          quasigeodesic(x, y), 2.0, h, 101));
    }
  }
  pass = pass && worst_mod <= 1e-9;
  detail += fmt("grid modulus gap %.2e; ", worst_mod);

  double worst_geo = 0.0;
  {
    RunConfig cfg;
    cfg.n = 2;
    cfg.dim = 2;
    cfg.seed = 1066;
    for (long k = 0; k < 200; ++k) {
      FSet x = sample_fset(cfg, Stratum::generic, 2 * k);
      FSet y = sample_fset(cfg, Stratum::generic, 2 * k + 1);
      const double h = hausdorff(x, y);
      if (h < 1e-12) continue;
      worst_geo = std::max(worst_geo, detail::grid_geodesic_violation(
                                          quasigeodesic(x, y), h, 101));
    }
  }
  pass = pass && worst_geo <= 1e-9;
  detail += fmt("X(2) geodesic gap %.2e; ", worst_geo);

  double worst_lambda = kInf, worst_spaced = -kInf;
  const NormSpec s1(2.0, 1);
  for (int n = 3; n <= 8; ++n) {
    auto [x, y] = spaced_pair(n, 4.0, {1.0}, s1);
    const double h = hausdorff(x, y);
    FSet mid = quasigeodesic(x, y).eval(0.5);
    worst_lambda = std::min(
        worst_lambda,
        2.0 * std::max(hausdorff(x, mid), hausdorff(mid, y)) / h);
    detail::Rng rng(detail::sample_seed(106, n, 0x91));
    for (long z = 0; z < 10000; ++z) {
      std::vector<Point> zp;
      const int zn = 1 + rng.uniform_int(n);
      for (int i = 0; i < zn; ++i) zp.push_back({rng.uniform(-2.0, (n - 2) * 4.0 + 3.0)});
      FSet zs(zp, n, s1);
      worst_spaced = std::max(
          worst_spaced, h - std::max(hausdorff(x, zs), hausdorff(zs, y)));
    }
  }
  pass = pass && worst_lambda >= 2.0 - 1e-6 && worst_spaced <= 1e-12;
  detail += fmt("sharpness lambda %.8f, spaced margin %.2e", worst_lambda,
                worst_spaced);
  return {pass, detail};
}

// criterion 7: delta and diam 2-Lipschitz at 1e-12 over 1e5 pairs; engineered
// proximal bijections on 1e4 instances.
Outcome criterion7() {
  RunConfig cfg;
  cfg.n = 3;
  cfg.dim = 2;
  cfg.p = 2.0;
  cfg.seed = 107;
  double worst = -kInf;
  for (long k = 0; k < 100000; ++k) {
    FSet x = detail_sample_full(cfg, 2 * k);
    FSet y = detail_sample_full(cfg, 2 * k + 1);
    const double h = hausdorff(x, y);
    worst = std::max(worst, std::abs(min_sep(x) - min_sep(y)) - 2.0 * h);
    worst = std::max(worst, std::abs(diam(x) - diam(y)) - 2.0 * h);
  }
  bool pass = worst <= 1e-12;

  long made = 0, present = 0;
  double worst_prox = -kInf;
  for (long k = 0; k < 10000; ++k) {
    FSet x = detail_sample_full(cfg, 3 * k);
    const double d0 = min_sep(x);
    if (d0 <= 0.0) continue;
    detail::Rng rng(detail::sample_seed(cfg.seed, k, 0x23));
    FSet y = detail::perturb(x, rng, 0.45 * d0);
    if (y.size() != x.size()) continue;
    ++made;
    auto bij = proximal_bijection(x, y);
    if (!bij) continue;
    ++present;
    const double h = hausdorff(x, y);
    for (auto [i, j] : *bij) {
      worst_prox = std::max(
          worst_prox, dist(x.points()[i], y.points()[j], x.spec()) - h);
    }
  }
  pass = pass && present == made && worst_prox <= 1e-12;
  return {pass, fmt("2-Lipschitz gap %.2e over 1e5 pairs; %ld/%ld engineered "
                    "bijections proximal (gap %.2e)",
                    worst, present, made, worst_prox)};
}

// criterion 8: semi-inner products vs one-sided quotients, radial
// semi-monotonicity, Dunkl-Williams.
Outcome criterion8() {
  RunConfig cfg;
  cfg.dim = 3;
  cfg.samples = 10000;
  cfg.seed = 108;
  std::vector<CheckRecord> checks = suite_normed_core(cfg);
  bool pass = true;
  std::string detail;
  for (const CheckRecord& c : checks) {
    pass = pass && c.pass;
    detail += fmt("%s %.2e; ", c.anchor.c_str(), c.max_ratio);
  }
  return {pass, detail};
}

// criterion 9: Steiner point of the right triangle against the
// exterior-angle value, hull membership, hull contraction.
Outcome criterion9() {
  const NormSpec s2(2.0, 2);
  Point s = steiner_point(FSet({{0, 0}, {1, 0}, {0, 1}}, 3, s2),
                          SelectorConfig(1000000, 9));
  bool pass = std::abs(s[0] - 0.375) <= 2e-3 && std::abs(s[1] - 0.375) <= 2e-3;
  std::string detail = fmt("triangle steiner (%.5f, %.5f); ", s[0], s[1]);

  RunConfig cfg;
  cfg.n = 5;
  cfg.dim = 2;
  cfg.seed = 109;
  cfg.selector = SelectorConfig(2048, 9);
  double worst_member = 0.0, worst_hull = -kInf;
  for (long k = 0; k < 2000; ++k) {
    FSet x = sample_fset(cfg, mix_stratum(k), 2 * k);
    worst_member = std::max(
        worst_member,
        hull_project(steiner_point(x, cfg.selector), x.points()).dist);
    if (k < 1000) {
      FSet y = sample_fset(cfg, mix_stratum(k), 2 * k + 1);
      worst_hull = std::max(worst_hull, hull_hausdorff_support(x, y, cfg.selector) -
                                            hausdorff(x, y));
    }
  }
  pass = pass && worst_member <= 1e-9 && worst_hull <= 1e-9;
  detail += fmt("membership gap %.2e; hull contraction gap %.2e", worst_member,
                worst_hull);
  return {pass, detail};
}

// criterion 10: reduction validated against brute-force enumeration plus the
// exact decomposition round-trip.
Outcome criterion10() {
  RunConfig cfg;
  cfg.samples = 10000;
  cfg.seed = 110;
  std::vector<CheckRecord> checks = suite_relations(cfg);
  bool pass = true;
  long brute = 0;
  for (const CheckRecord& c : checks) {
    pass = pass && c.pass;
    if (c.name.find("brute-force") != std::string::npos) brute = c.samples;
  }
  return {pass, fmt("1e4 random relations, %ld brute-force enumerations", brute)};
}

}  // namespace

int main() {
  struct Row {
    const char* name;
    Outcome (*fn)();
  };
  const Row rows[] = {
      {"r2 is 1-Lipschitz", criterion1},
      {"r3 bound 731 with strip constants", criterion2},
      {"rn2 retraction identity/equivariance/stability", criterion3},
      {"collision flow closed forms and time sandwich", criterion4},
      {"Holder estimate with proximity bound", criterion5},
      {"quasiconvexity modulus and sharpness", criterion6},
      {"metric lemmas and proximal bijections", criterion7},
      {"semi-inner product analysis", criterion8},
      {"Steiner selector", criterion9},
      {"relation reduction", criterion10},
  };
  int failures = 0;
  int idx = 0;
  for (const Row& row : rows) {
    ++idx;
    Outcome out{false, "exception"};
    try {
      out = row.fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    printf("%s criterion %d: %s — %s\n", out.pass ? "PASS" : "FAIL", idx,
           row.name, out.detail.c_str());
    fflush(stdout);
    if (!out.pass) ++failures;
  }
  printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
