#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subsetspace/io.hpp"
#include "subsetspace/retract.hpp"
#include "subsetspace/sampling.hpp"

/// Verification engine: empirical Lipschitz / Holder estimation over
/// stratified samples and per-claim property suites with reproducible JSON
/// reports.
namespace subsetspace {

struct CheckRecord {
  std::string name;
  std::string anchor;  // stable identifier of the claim being exercised
  long samples = 0;
  double max_ratio = 0.0;  // worst observed ratio or violation margin
  std::string witness;     // serialized worst-case inputs, when meaningful
  bool pass = false;
};

struct Report {
  std::string suite;
  RunConfig config;
  std::vector<CheckRecord> checks;
  long runtime_ms = 0;

  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    std::set<std::string> anchors;
    for (const auto& c : checks) anchors.insert(c.anchor);
    j["anchors"] = anchors;
    j["config"] = {{"dim", config.dim},     {"n", config.n},
                   {"p", p_to_json(config.p)}, {"seed", config.seed},
                   {"samples", config.samples}, {"box", config.box},
                   {"tau", config.tau},     {"map_id", config.map_id}};
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      j["checks"].push_back({{"name", c.name},
                             {"anchor", c.anchor},
                             {"samples", c.samples},
                             {"max_ratio", c.max_ratio},
                             {"witness", c.witness},
                             {"pass", c.pass}});
    }
    if (config.include_timing) j["runtime_ms"] = runtime_ms;
    return j;
  }
};

/// Registered maps X(n) -> X(m) usable by the ratio estimators.
inline std::function<FSet(const FSet&)> make_map(const std::string& map_id,
                                                 const RunConfig& cfg) {
  if (map_id == "identity") return [](const FSet& x) { return x; };
  if (map_id == "dilation2") {
    return [](const FSet& x) {
      std::vector<Point> pts;
      for (const Point& q : x.points()) pts.push_back(vec::scale(q, 2.0));
      return FSet(pts, x.ambient_n(), x.spec());
    };
  }
  if (map_id == "r2") return [](const FSet& x) { return r2(x); };
  if (map_id == "r3") return [](const FSet& x) { return r3(x); };
  if (map_id == "rn2") {
    return [cfg](const FSet& x) { return rn2(x, cfg.tau, cfg.selector); };
  }
  if (map_id == "selector") {
    return [cfg](const FSet& x) { return selector_retraction(x, cfg.selector); };
  }
  if (map_id == "flow") {
    return [cfg](const FSet& x) { return holder_retraction(x, cfg.flow); };
  }
  throw std::invalid_argument("make_map: unknown map id '" + map_id + "'");
}

struct RatioRow {
  long pair_id;
  double d_in;
  double d_out;
  double ratio;
  double bound;
  Stratum stratum;
};

struct RatioEstimate {
  double max_ratio = 0.0;
  std::optional<std::pair<FSet, FSet>> witness;
  double max_at_half = 0.0;  // running max after the first half of the pairs
  long used = 0;
  std::vector<RatioRow> rows;  // populated only when keep_rows is set
};

namespace detail {

inline FSet perturb(const FSet& x, Rng& rng, double scale) {
  std::vector<Point> pts;
  for (const Point& q : x.points()) {
    pts.push_back(vec::add(q, vec::scale(rng.direction(x.spec().dim),
                                         scale * rng.uniform())));
  }
  return FSet(std::move(pts), x.ambient_n(), x.spec());
}

/// Widens the fatter witness cluster about its center by the factor 1 + s.
/// This moves dist_H(., X(2)) at unit rate per unit of Hausdorff change,
/// the direction that extremizes the interpolated retractions.
inline FSet inflate_cluster(const FSet& x, double s) {
  const TwoCenterWitness w = dist_to_X2(x);
  std::vector<double> radius(w.centers.size(), 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    const int c = w.partition[i] % static_cast<int>(w.centers.size());
    radius[c] = std::max(radius[c], dist(x.points()[i], w.centers[c], x.spec()));
  }
  const int target =
      (radius.size() > 1 && radius[1] > radius[0]) ? 1 : 0;
  std::vector<Point> pts;
  for (size_t i = 0; i < x.size(); ++i) {
    const int c = w.partition[i] % static_cast<int>(w.centers.size());
    if (c == target) {
      Point q = vec::sub(x.points()[i], w.centers[c]);
      pts.push_back(vec::add(w.centers[c], vec::scale(q, 1.0 + s)));
    } else {
      pts.push_back(x.points()[i]);
    }
  }
  return FSet(std::move(pts), x.ambient_n(), x.spec());
}

}  // namespace detail

/// Max of d_H(F(x), F(y)) / d_H(x, y) over `samples` stratified pairs.
/// Alternates independent same-stratum pairs with nearby perturbation
/// pairs; pairs with d_H < 1e-12 are skipped.
inline RatioEstimate estimate_lipschitz(const std::string& map_id,
                                        const RunConfig& cfg,
                                        bool keep_rows = false) {
  auto F = make_map(map_id, cfg);
  RatioEstimate est;
  for (long k = 0; k < cfg.samples; ++k) {
    if (k == cfg.samples / 2) est.max_at_half = est.max_ratio;
    const Stratum st = mix_stratum(k);
    FSet x = sample_fset(cfg, st, 2 * k);
    detail::Rng rng(detail::sample_seed(cfg.seed, 2 * k + 1, 0xab));
    FSet y = (k % 2 == 0)
                 ? sample_fset(cfg, st, 2 * k + 1)
                 : (st == Stratum::pou_boundary && k % 4 == 1)
                       ? detail::inflate_cluster(x, 0.3 * std::pow(10.0, -2.0 * rng.uniform()))
                       : detail::perturb(x, rng, cfg.box * std::pow(10.0, -3.0 * rng.uniform()));
    const double h = hausdorff(x, y);
    if (h < 1e-12) continue;
    const double hout = hausdorff(F(x), F(y));
    const double ratio = hout / h;
    ++est.used;
    if (keep_rows) est.rows.push_back({k, h, hout, ratio, 0.0, st});
    if (ratio > est.max_ratio) {
      est.max_ratio = ratio;
      est.witness = {x, y};
    }
  }
  return est;
}

/// Max of d_H(r(x), r(y)) / holder_bound(x, y) over pairs with
/// d_H(x, y) in [1e-3, 1] * box.
inline RatioEstimate estimate_holder(const RunConfig& cfg, bool keep_rows = false) {
  auto F = make_map("flow", cfg);
  RatioEstimate est;
  const double lo = 1e-3 * cfg.box, hi = 1.0 * cfg.box;
  for (long k = 0; k < cfg.samples; ++k) {
    if (k == cfg.samples / 2) est.max_at_half = est.max_ratio;
    FSet x = sample_fset(cfg, Stratum::generic, 2 * k);
    if (static_cast<int>(x.size()) != cfg.n) continue;
    detail::Rng rng(detail::sample_seed(cfg.seed, 2 * k + 1, 0xcd));
    double eta = rng.log_uniform(lo, hi);
    FSet y = detail::perturb(x, rng, eta);
    double h = hausdorff(x, y);
    for (int tries = 0; tries < 8 && (h < lo || h > hi); ++tries) {
      eta *= (h < lo) ? 4.0 : 0.25;
      y = detail::perturb(x, rng, eta);
      h = hausdorff(x, y);
    }
    if (h < lo || h > hi || static_cast<int>(y.size()) != cfg.n) continue;
    const double bound = holder_bound(x, y);
    if (!(bound > 0.0)) continue;
    const double hout = hausdorff(F(x), F(y));
    const double ratio = hout / bound;
    ++est.used;
    if (keep_rows) est.rows.push_back({k, h, hout, ratio, bound, Stratum::generic});
    if (ratio > est.max_ratio) {
      est.max_ratio = ratio;
      est.witness = {x, y};
    }
  }
  return est;
}

namespace detail {

inline std::string witness_json(const FSet& x, const FSet& y) {
  nlohmann::json j = {fset_to_json(x), fset_to_json(y)};
  return j.dump();
}

inline std::string witness_json(const FSet& x) { return fset_to_json(x).dump(); }

inline CheckRecord ratio_check(const std::string& name, const std::string& anchor,
                               const RatioEstimate& est, double limit) {
  CheckRecord c{name, anchor, est.used, est.max_ratio, "", est.max_ratio <= limit};
  if (est.witness) c.witness = witness_json(est.witness->first, est.witness->second);
  return c;
}

}  // namespace detail

using SuiteFn = std::function<std::vector<CheckRecord>(const RunConfig&)>;

std::vector<CheckRecord> suite_normed_core(const RunConfig& cfg);
std::vector<CheckRecord> suite_fset_metric(const RunConfig& cfg);
std::vector<CheckRecord> suite_relations(const RunConfig& cfg);
std::vector<CheckRecord> suite_paths(const RunConfig& cfg);
std::vector<CheckRecord> suite_selector(const RunConfig& cfg);
std::vector<CheckRecord> suite_r2(const RunConfig& cfg);
std::vector<CheckRecord> suite_r3(const RunConfig& cfg);
std::vector<CheckRecord> suite_rn2(const RunConfig& cfg);
std::vector<CheckRecord> suite_flow(const RunConfig& cfg);
std::vector<CheckRecord> suite_flow_holder(const RunConfig& cfg);

namespace detail {

/// Restrict a suite to the checks carrying one anchor.
inline SuiteFn filter_suite(SuiteFn base, std::string anchor) {
  return [base = std::move(base), anchor = std::move(anchor)](const RunConfig& cfg) {
    std::vector<CheckRecord> kept;
    for (CheckRecord& c : base(cfg)) {
      if (c.anchor == anchor) kept.push_back(std::move(c));
    }
    return kept;
  };
}

}  // namespace detail

inline const std::vector<std::pair<std::string, SuiteFn>>& suite_registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"normed-core", suite_normed_core},
      {"fset-metric", suite_fset_metric},
      {"relations", suite_relations},
      {"paths", suite_paths},
      {"selector", suite_selector},
      {"r2-lipschitz", suite_r2},
      {"r3-lipschitz", suite_r3},
      {"rn2-retraction", suite_rn2},
      {"flow", suite_flow},
      {"flow-holder", suite_flow_holder},
      // focused views of single claims
      {"delta-2lip",
       detail::filter_suite(suite_fset_metric, "min-separation-2-lipschitz")},
      {"quasigeodesic-modulus",
       detail::filter_suite(suite_paths, "quasiconvexity-2")},
      {"spaced-sharpness",
       detail::filter_suite(suite_paths, "quasiconvexity-sharpness")},
  };
  return reg;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suite_registry()) names.push_back(name);
  return names;
}

/// Runs one registered invariant suite and assembles the report.
inline Report verify(const std::string& suite_id, const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& [name, fn] : suite_registry()) {
    if (name == suite_id) {
      Report r{suite_id, cfg, fn(cfg), 0};
      r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
      return r;
    }
  }
  throw std::invalid_argument("verify: unknown suite '" + suite_id + "'");
}

}  // namespace subsetspace

#include "subsetspace/suites.hpp"
