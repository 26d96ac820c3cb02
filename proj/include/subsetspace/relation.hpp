#pragma once

#include <map>
#include <utility>
#include <vector>

#include "subsetspace/fset.hpp"

/// Complete relations between two finite sets, essentiality, reduction to a
/// reduced complete subrelation, and the surjection decomposition behind the
/// geodesic constructions.
namespace subsetspace {

/// A relation between index sets {0..left_size-1} and {0..right_size-1}.
/// Index-based rather than value-based so that coincidentally equal points
/// across the two sets stay distinguishable.
class Relation {
 public:
  Relation(std::vector<std::pair<int, int>> pairs, int left_size, int right_size)
      : left_size_(left_size), right_size_(right_size) {
    if (left_size < 1 || right_size < 1) {
      throw std::invalid_argument("Relation: index sets must be nonempty");
    }
    for (auto [a, b] : pairs) {
      if (a < 0 || a >= left_size || b < 0 || b >= right_size) {
        throw std::invalid_argument("Relation: pair index out of range");
      }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    pairs_ = std::move(pairs);
  }

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int left_size() const { return left_size_; }
  int right_size() const { return right_size_; }
  size_t size() const { return pairs_.size(); }

  bool contains(std::pair<int, int> q) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), q);
  }

  /// Complete iff both projections cover their index sets.
  bool complete() const {
    std::vector<char> la(left_size_, 0), rb(right_size_, 0);
    for (auto [a, b] : pairs_) {
      la[a] = 1;
      rb[b] = 1;
    }
    for (char c : la) {
      if (!c) return false;
    }
    for (char c : rb) {
      if (!c) return false;
    }
    return true;
  }

  bool operator==(const Relation& o) const {
    return left_size_ == o.left_size_ && right_size_ == o.right_size_ &&
           pairs_ == o.pairs_;
  }

 private:
  std::vector<std::pair<int, int>> pairs_;
  int left_size_;
  int right_size_;
};

/// All pairs realizing the Hausdorff distance: {(i,j) : d(x_i,y_j) <= d_H + tol}.
/// Complete by attainment of the sup-inf over finite sets.
inline Relation proximal_relation(const FSet& x, const FSet& y) {
  check_same_spec(x, y);
  const double h = hausdorff(x, y) + 1e-12;
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t j = 0; j < y.size(); ++j) {
      if (dist(x.points()[i], y.points()[j], x.spec()) <= h) {
        pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return Relation(std::move(pairs), static_cast<int>(x.size()),
                  static_cast<int>(y.size()));
}

/// Left and right orders (O_l, O_r) of a pair: how many left partners its
/// right element has, and vice versa.
inline std::pair<int, int> orders(const Relation& r, std::pair<int, int> q) {
  if (!r.contains(q)) {
    throw std::invalid_argument("orders: pair not in relation");
  }
  int ol = 0, orr = 0;
  for (auto [a, b] : r.pairs()) {
    if (b == q.second) ++ol;
    if (a == q.first) ++orr;
  }
  return {ol, orr};
}

inline bool essential(const Relation& r, std::pair<int, int> q) {
  auto [ol, orr] = orders(r, q);
  return ol == 1 || orr == 1;
}

/// Reduced complete subrelation: repeatedly remove the lexicographically
/// first inessential pair until every pair is essential. One valid reduced
/// form among possibly several; the scan order makes it deterministic.
inline Relation reduce(const Relation& r) {
  if (!r.complete()) {
    throw std::invalid_argument("reduce: relation must be complete");
  }
  std::vector<std::pair<int, int>> pairs = r.pairs();
  // left_deg[b] = O_l of any pair ending at b; right_deg[a] = O_r at a.
  std::vector<int> left_deg(r.right_size(), 0), right_deg(r.left_size(), 0);
  for (auto [a, b] : pairs) {
    ++right_deg[a];
    ++left_deg[b];
  }
  bool removed = true;
  while (removed) {
    removed = false;
    for (size_t k = 0; k < pairs.size(); ++k) {
      auto [a, b] = pairs[k];
      if (left_deg[b] > 1 && right_deg[a] > 1) {
        --right_deg[a];
        --left_deg[b];
        pairs.erase(pairs.begin() + static_cast<long>(k));
        removed = true;
        break;
      }
    }
  }
  return Relation(std::move(pairs), r.left_size(), r.right_size());
}

inline bool is_reduced(const Relation& r) {
  if (!r.complete()) return false;
  for (auto q : r.pairs()) {
    if (!essential(r, q)) return false;
  }
  return true;
}

/// The characterization of a reduced complete relation: disjoint splits
/// A = A' | A'', B = B' | B'' with surjections f: A' -> B', g: B'' -> A''
/// whose graphs partition the relation. The bijective middle part is folded
/// into f.
struct Decomposition {
  std::vector<int> x_prime, x_dprime;
  std::vector<int> y_prime, y_dprime;
  std::map<int, int> f;  // x_prime -> y_prime
  std::map<int, int> g;  // y_dprime -> x_dprime
};

inline Decomposition decompose(const Relation& r) {
  if (!is_reduced(r)) {
    throw std::invalid_argument("decompose: relation must be reduced and complete");
  }
  Decomposition d;
  std::vector<int> right_deg(r.left_size(), 0);
  std::vector<int> unique_b(r.left_size(), -1);
  for (auto [a, b] : r.pairs()) {
    ++right_deg[a];
    unique_b[a] = b;
  }
  std::vector<char> in_y_prime(r.right_size(), 0);
  for (int a = 0; a < r.left_size(); ++a) {
    if (right_deg[a] == 1) {
      d.x_prime.push_back(a);
      d.f[a] = unique_b[a];
      in_y_prime[unique_b[a]] = 1;
    } else {
      d.x_dprime.push_back(a);
    }
  }
  for (int b = 0; b < r.right_size(); ++b) {
    (in_y_prime[b] ? d.y_prime : d.y_dprime).push_back(b);
  }
  for (auto [a, b] : r.pairs()) {
    if (right_deg[a] != 1) d.g[b] = a;
  }
  return d;
}

/// Rebuild the relation {(a, f(a))} | {(g(b), b)} from a decomposition.
inline Relation reassemble(const Decomposition& d, int left_size, int right_size) {
  std::vector<std::pair<int, int>> pairs;
  for (auto [a, b] : d.f) pairs.emplace_back(a, b);
  for (auto [b, a] : d.g) pairs.emplace_back(a, b);
  return Relation(std::move(pairs), left_size, right_size);
}

}  // namespace subsetspace
