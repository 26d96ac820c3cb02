#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

/// Vectors of R^d under p-norms: norming functionals, semi-inner products,
/// and the radial projection x -> x/||x||.
namespace subsetspace {

using Point = std::vector<double>;
using Functional = std::vector<double>;

/// Ambient norm descriptor: the p-norm exponent (p >= 1, or +infinity) and
/// the dimension d.
struct NormSpec {
  double p = 2.0;
  int dim = 1;

  NormSpec() = default;
  NormSpec(double p_, int dim_) : p(p_), dim(dim_) {
    if (!(p >= 1.0)) {  // NaN rejected here as well
      throw std::invalid_argument("NormSpec: p must satisfy p >= 1 or p = inf");
    }
    if (dim < 1) {
      throw std::invalid_argument("NormSpec: dim must be >= 1");
    }
  }

  bool is_inf() const { return std::isinf(p); }

  /// Dual exponent q with 1/p + 1/q = 1.
  double dual_exponent() const {
    if (is_inf()) return 1.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0);
  }

  bool operator==(const NormSpec& o) const { return p == o.p && dim == o.dim; }
  bool operator!=(const NormSpec& o) const { return !(*this == o); }
};

namespace vec {

inline void check_dim(const Point& v, const NormSpec& spec) {
  if (static_cast<int>(v.size()) != spec.dim) {
    throw std::invalid_argument("dimension mismatch: vector has " +
                                std::to_string(v.size()) + " coords, spec.dim = " +
                                std::to_string(spec.dim));
  }
}

inline bool all_finite(const Point& v) {
  for (double c : v) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

inline Point add(const Point& a, const Point& b) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Point sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Point scale(const Point& a, double t) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
  return r;
}

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Point zero(int dim) { return Point(static_cast<size_t>(dim), 0.0); }

inline bool is_zero(const Point& v) {
  return std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; });
}

/// Lexicographic coordinate order; ties impossible for distinct vectors.
inline bool lex_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace vec

/// p-norm of v. Exactly 0 iff v = 0; scaled evaluation avoids overflow for
/// general exponents.
inline double norm(const Point& v, const NormSpec& spec) {
  vec::check_dim(v, spec);
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  if (m == 0.0) return 0.0;
  if (spec.is_inf()) return m;
  if (spec.p == 1.0) {
    double s = 0.0;
    for (double c : v) s += std::abs(c);
    return s;
  }
  if (spec.p == 2.0) {
    double s = 0.0;
    for (double c : v) {
      double t = c / m;
      s += t * t;
    }
    return m * std::sqrt(s);
  }
  double s = 0.0;
  for (double c : v) s += std::pow(std::abs(c) / m, spec.p);
  return m * std::pow(s, 1.0 / spec.p);
}

inline double dist(const Point& a, const Point& b, const NormSpec& spec) {
  return norm(vec::sub(a, b), spec);
}

/// The norming functional z* of y scaled so that ||z*||_dual = ||y|| and
/// z*(y) = ||y||^2. Unique only for p in (1, inf); for p in {1, inf} the
/// duality map is multi-valued and semi_inner must be used instead.
inline Functional norming_functional(const Point& y, const NormSpec& spec) {
  vec::check_dim(y, spec);
  if (vec::is_zero(y)) {
    throw std::domain_error("norming_functional: y must be nonzero");
  }
  if (spec.p == 1.0 || spec.is_inf()) {
    throw std::invalid_argument(
        "norming_functional: duality map is multi-valued for p in {1, inf}; "
        "use semi_inner");
  }
  const double ny = norm(y, spec);
  Functional f(y.size());
  if (spec.p == 2.0) {
    f = y;
    return f;
  }
  // f_i = sign(y_i) |y_i|^{p-1} * ||y||^{2-p}, evaluated against |y_i|/||y||
  // to keep the powers tame.
  for (size_t i = 0; i < y.size(); ++i) {
    double a = std::abs(y[i]) / ny;
    double mag = std::pow(a, spec.p - 1.0) * ny;
    f[i] = std::copysign(mag, y[i]);
    if (y[i] == 0.0) f[i] = 0.0;
  }
  return f;
}

enum class Side { minus, plus };

/// Semi-inner products <x,y>_- / <x,y>_+ : inf/sup of <x, y*> over the
/// norming functionals y* of y. For p in (1, inf) both sides coincide with
/// the pairing against the unique norming functional; for p in {1, inf} the
/// extreme points of the duality set are enumerated combinatorially
/// (sign choices on zero coordinates for p = 1, argmax coordinates for
/// p = inf).
inline double semi_inner(const Point& x, const Point& y, Side side,
                         const NormSpec& spec) {
  vec::check_dim(x, spec);
  vec::check_dim(y, spec);
  if (vec::is_zero(y)) {
    throw std::domain_error("semi_inner: y must be nonzero");
  }
  const double sgn = (side == Side::plus) ? 1.0 : -1.0;
  if (spec.p == 1.0) {
    const double ny = norm(y, spec);
    double s = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
      if (y[i] != 0.0) {
        s += std::copysign(1.0, y[i]) * x[i];
      } else {
        s += sgn * std::abs(x[i]);
      }
    }
    return ny * s;
  }
  if (spec.is_inf()) {
    const double ny = norm(y, spec);
    double best = (side == Side::plus) ? -std::numeric_limits<double>::infinity()
                                       : std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < y.size(); ++i) {
      if (std::abs(y[i]) == ny) {
        double val = std::copysign(1.0, y[i]) * x[i];
        best = (side == Side::plus) ? std::max(best, val) : std::min(best, val);
      }
    }
    return ny * best;
  }
  return vec::dot(x, norming_functional(y, spec));
}

/// Radial projection x -> x/||x||.
inline Point radial(const Point& x, const NormSpec& spec) {
  const double n = norm(x, spec);
  if (n == 0.0) {
    throw std::domain_error("radial: x must be nonzero");
  }
  return vec::scale(x, 1.0 / n);
}

}  // namespace subsetspace
