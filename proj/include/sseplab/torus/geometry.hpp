#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace sseplab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Mode index k in Z^d; only the first d entries are meaningful.
using ModeIndex = std::array<int, 2>;

/// Discrete torus with 2n+1 sites per axis at coordinates 2*pi*s/(2n+1),
/// s in {0,...,2n}, d in {1,2}. Site indexing is row-major over axes.
struct Torus {
  int d = 1;
  int n = 1;

  Torus(int dim, int half) : d(dim), n(half) {
    if (dim < 1 || dim > 2) throw std::invalid_argument("Torus: d must be 1 or 2");
    if (half < 1) throw std::invalid_argument("Torus: n must be >= 1");
  }

  int len() const { return 2 * n + 1; }

  std::int64_t sites() const {
    std::int64_t m = 1;
    for (int j = 0; j < d; ++j) m *= len();
    return m;
  }

  std::array<int, 2> site_coords(std::int64_t idx) const {
    std::array<int, 2> s{0, 0};
    for (int j = d - 1; j >= 0; --j) {
      s[j] = static_cast<int>(idx % len());
      idx /= len();
    }
    return s;
  }

  std::int64_t site_index(const std::array<int, 2>& s) const {
    std::int64_t idx = 0;
    for (int j = 0; j < d; ++j) idx = idx * len() + s[j];
    return idx;
  }

  /// Euclidean coordinates of a site on [0, 2*pi)^d.
  std::array<double, 2> position(std::int64_t idx) const {
    auto s = site_coords(idx);
    std::array<double, 2> x{0.0, 0.0};
    for (int j = 0; j < d; ++j) x[j] = kTwoPi * s[j] / len();
    return x;
  }

  /// Site shifted by `step` lattice units along `axis` (cyclic).
  std::int64_t neighbor(std::int64_t idx, int axis, int step) const {
    auto s = site_coords(idx);
    int v = (s[axis] + step) % len();
    if (v < 0) v += len();
    s[axis] = v;
    return site_index(s);
  }

  bool operator==(const Torus& o) const { return d == o.d && n == o.n; }
};

inline double mode_norm_sq(const ModeIndex& k, int d) {
  double r = 0.0;
  for (int j = 0; j < d; ++j) r += static_cast<double>(k[j]) * k[j];
  return r;
}

/// Lexicographic half-space of Z^d \ {0}: first nonzero component positive.
inline bool lex_positive(const ModeIndex& k, int d) {
  for (int j = 0; j < d; ++j) {
    if (k[j] > 0) return true;
    if (k[j] < 0) return false;
  }
  return false;
}

}  // namespace sseplab
