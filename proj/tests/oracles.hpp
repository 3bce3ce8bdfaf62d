// Test-only oracles. Every route here is independent of the library's
// sigma-immanent evaluation path: plain coordinate arithmetic, cofactor
// determinants, parametric line/plane membership.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// diag{1,-1,...,-1} bilinear form
inline double minkowski_dot(const Vec& a, const Vec& b) {
  double s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// determinant by cofactor expansion; fine as an oracle for tiny matrices
inline double cofactor_det(const std::vector<Vec>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  double acc = 0.0;
  double sign = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Vec> minor;
    for (std::size_t i = 1; i < n; ++i) {
      Vec row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    acc += sign * m[0][c] * cofactor_det(minor);
    sign = -sign;
  }
  return acc;
}

// distance from point to the line through a with direction d (Euclidean)
inline double line_distance(const Vec& p, const Vec& a, const Vec& d) {
  const Vec ap = sub(p, a);
  const double t = dot(ap, d) / dot(d, d);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = ap[i] - t * d[i];
    s += r * r;
  }
  return std::sqrt(s);
}

// deterministic test point generator (engine output is standardized)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1p-53;
    return lo + (hi - lo) * u;
  }
  Vec point(std::size_t dim, double lo = -1.0, double hi = 1.0) {
    Vec v(dim);
    for (auto& c : v) c = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oracle
