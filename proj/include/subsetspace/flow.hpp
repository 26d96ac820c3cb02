#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "subsetspace/fset.hpp"

/// The collision flow du_i/dt = -J_i(u), J_i(u) = sum_{j != i} (u_i - u_j) /
/// ||u_i - u_j||: collision-time computation and the Holder retraction
/// X(n) -> X(n-1) given by the configuration at first collision.
namespace subsetspace {

struct FlowConfig {
  double eps_coll = 1e-8;
  double theta = 0.1;
  long max_steps = 2000000;
  double merge_factor = 4.0;
  bool record_trajectory = false;

  FlowConfig() = default;
  FlowConfig(double eps, double th, long steps, double merge)
      : eps_coll(eps), theta(th), max_steps(steps), merge_factor(merge) {
    validate();
  }
  void validate() const {
    if (!(eps_coll > 0.0)) throw std::invalid_argument("FlowConfig: eps_coll <= 0");
    if (!(theta > 0.0 && theta < 1.0)) {
      throw std::invalid_argument("FlowConfig: theta must lie in (0,1)");
    }
    if (!(merge_factor >= 1.0)) {
      throw std::invalid_argument("FlowConfig: merge_factor must be >= 1");
    }
  }
};

struct FlowNonconvergence : std::runtime_error {
  long steps;
  double t;
  double delta;
  FlowNonconvergence(long steps_, double t_, double delta_)
      : std::runtime_error("collision flow: max_steps exceeded at t = " +
                           std::to_string(t_) + ", delta = " + std::to_string(delta_)),
        steps(steps_), t(t_), delta(delta_) {}
};

struct FlowTraceRow {
  double t;
  double delta;
  double closest_pair;  // distance of the initially closest pair
};

struct FlowResult {
  double T;
  std::vector<Point> terminal;  // labeled configuration u(T)
  FSet retract;
  long steps;
  std::vector<FlowTraceRow> trace;
  std::vector<std::pair<double, std::vector<Point>>> snapshots;  // optional
};

/// J(u). Each component satisfies ||J_i|| <= n - 1.
inline std::vector<Point> flow_field(const std::vector<Point>& u,
                                     const NormSpec& spec) {
  const size_t n = u.size();
  std::vector<Point> j(n, vec::zero(spec.dim));
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      Point diff = vec::sub(u[a], u[b]);
      double nd = norm(diff, spec);
      if (nd == 0.0) {
        throw std::domain_error("flow_field: coincident points");
      }
      Point unit = vec::scale(diff, 1.0 / nd);
      j[a] = vec::add(j[a], unit);
      j[b] = vec::sub(j[b], unit);
    }
  }
  return j;
}

namespace detail {

inline double tuple_min_sep(const std::vector<Point>& u, const NormSpec& spec,
                            size_t* ai = nullptr, size_t* bi = nullptr) {
  double m = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < u.size(); ++a) {
    for (size_t b = a + 1; b < u.size(); ++b) {
      double d = dist(u[a], u[b], spec);
      if (d < m) {
        m = d;
        if (ai) *ai = a;
        if (bi) *bi = b;
      }
    }
  }
  return m;
}

inline void rk4_step(std::vector<Point>& u, double h, const NormSpec& spec) {
  const size_t n = u.size();
  auto axpy = [&](const std::vector<Point>& base, const std::vector<Point>& k,
                  double c) {
    std::vector<Point> r(n);
    for (size_t i = 0; i < n; ++i) r[i] = vec::add(base[i], vec::scale(k[i], c));
    return r;
  };
  // u' = -J(u)
  std::vector<Point> k1 = flow_field(u, spec);
  std::vector<Point> k2 = flow_field(axpy(u, k1, -h / 2.0), spec);
  std::vector<Point> k3 = flow_field(axpy(u, k2, -h / 2.0), spec);
  std::vector<Point> k4 = flow_field(axpy(u, k3, -h), spec);
  for (size_t i = 0; i < n; ++i) {
    Point inc = vec::add(vec::add(k1[i], vec::scale(k2[i], 2.0)),
                         vec::add(vec::scale(k3[i], 2.0), k4[i]));
    u[i] = vec::add(u[i], vec::scale(inc, -h / 6.0));
  }
}

/// Single-linkage merge of near-coincident terminal points into their
/// arithmetic means.
inline std::vector<Point> merge_clusters(const std::vector<Point>& u,
                                         const NormSpec& spec, double radius) {
  const size_t n = u.size();
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      if (dist(u[a], u[b], spec) <= radius) parent[find(a)] = find(b);
    }
  }
  std::vector<Point> out;
  std::vector<char> done(n, 0);
  for (size_t i = 0; i < n; ++i) {
    size_t root = find(i);
    if (done[root]) continue;
    done[root] = 1;
    Point m = vec::zero(spec.dim);
    int count = 0;
    for (size_t j = 0; j < n; ++j) {
      if (find(j) == root) {
        m = vec::add(m, u[j]);
        ++count;
      }
    }
    out.push_back(vec::scale(m, 1.0 / count));
  }
  return out;
}

}  // namespace detail

/// (delta(x) / (2(n-1)), delta(x) / 2): the collision-time sandwich.
inline std::pair<double, double> collision_time_bounds(const FSet& x) {
  const int n = x.ambient_n();
  if (static_cast<int>(x.size()) != n || n < 2) {
    throw std::domain_error(
        "collision_time_bounds: x must have full cardinality n >= 2");
  }
  const double d = min_sep(x);
  return {d / (2.0 * (n - 1)), d / 2.0};
}

/// Integrates the collision flow until the minimum separation falls below
/// eps_coll. Step rule h <= theta * delta(u) / (4(n-1)) keeps stage
/// evaluations collision-free and localizes the event to O(eps_coll).
inline FlowResult integrate_to_collision(const FSet& x, const FlowConfig& cfg = {}) {
  cfg.validate();
  const int n = x.ambient_n();
  if (static_cast<int>(x.size()) != n || n < 2) {
    throw std::domain_error(
        "integrate_to_collision: x must have full cardinality n >= 2");
  }
  const NormSpec& spec = x.spec();
  std::vector<Point> u = x.points();
  size_t ci = 0, cj = 1;
  double delta = detail::tuple_min_sep(u, spec, &ci, &cj);
  const size_t pi = ci, pj = cj;  // initially closest pair, traced throughout

  std::vector<FlowTraceRow> trace;
  std::vector<std::pair<double, std::vector<Point>>> snapshots;
  trace.push_back({0.0, delta, dist(u[pi], u[pj], spec)});
  if (cfg.record_trajectory) snapshots.push_back({0.0, u});
  double t = 0.0;
  long steps = 0;
  while (delta > cfg.eps_coll) {
    if (steps >= cfg.max_steps) throw FlowNonconvergence(steps, t, delta);
    const double h = cfg.theta * delta / (4.0 * (n - 1));
    detail::rk4_step(u, h, spec);
    t += h;
    ++steps;
    delta = detail::tuple_min_sep(u, spec);
    trace.push_back({t, delta, dist(u[pi], u[pj], spec)});
    if (cfg.record_trajectory) snapshots.push_back({t, u});
  }
  std::vector<Point> merged =
      detail::merge_clusters(u, spec, cfg.merge_factor * cfg.eps_coll);
  return FlowResult{t,
                    std::move(u),
                    FSet(std::move(merged), std::max(n - 1, 1), spec),
                    steps,
                    std::move(trace),
                    std::move(snapshots)};
}

/// Configuration at an exact intermediate time (the flow restarted from the
/// returned state reaches collision after T(x) - t_target).
inline std::vector<Point> integrate_until(const FSet& x, double t_target,
                                          const FlowConfig& cfg = {}) {
  cfg.validate();
  const int n = x.ambient_n();
  if (static_cast<int>(x.size()) != n || n < 2) {
    throw std::domain_error("integrate_until: x must have full cardinality n >= 2");
  }
  const NormSpec& spec = x.spec();
  std::vector<Point> u = x.points();
  double t = 0.0;
  long steps = 0;
  while (t < t_target) {
    double delta = detail::tuple_min_sep(u, spec);
    if (delta <= cfg.eps_coll) break;
    if (steps >= cfg.max_steps) throw FlowNonconvergence(steps, t, delta);
    double h = std::min(cfg.theta * delta / (4.0 * (n - 1)), t_target - t);
    detail::rk4_step(u, h, spec);
    t += h;
    ++steps;
  }
  return u;
}

/// The Holder retraction X(n) -> X(n-1): identity below full cardinality,
/// otherwise the merged configuration at first collision.
inline FSet holder_retraction(const FSet& x, const FlowConfig& cfg = {}) {
  const int n = x.ambient_n();
  if (static_cast<int>(x.size()) < n) {
    return x.with_ambient(std::max(n - 1, 1));
  }
  return integrate_to_collision(x, cfg).retract;
}

/// Right side of the Holder estimate:
/// n(2n-1) diam(x u y)^{1 - 1/(2n-1)} d_H(x,y)^{1/(2n-1)}.
inline double holder_bound(const FSet& x, const FSet& y) {
  check_same_spec(x, y);
  if (x.ambient_n() != y.ambient_n()) {
    throw std::invalid_argument("holder_bound: ambient n mismatch");
  }
  const double n = static_cast<double>(x.ambient_n());
  std::vector<Point> all = x.points();
  all.insert(all.end(), y.points().begin(), y.points().end());
  FSet uni(all, static_cast<int>(x.size() + y.size()), x.spec());
  const double dm = diam(uni);
  const double h = hausdorff(x, y);
  const double alpha = 1.0 / (2.0 * n - 1.0);
  return n * (2.0 * n - 1.0) * std::pow(dm, 1.0 - alpha) * std::pow(h, alpha);
}

}  // namespace subsetspace
