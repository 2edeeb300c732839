#pragma once

#include <vector>

#include "sseplab/torus/geometry.hpp"

namespace sseplab {

/// Real-valued function on the lattice of a discrete torus.
class GridField {
  Torus g_;
  std::vector<double> v_;

 public:
  explicit GridField(Torus g) : g_(g), v_(static_cast<std::size_t>(g.sites()), 0.0) {}

  const Torus& torus() const { return g_; }
  std::int64_t size() const { return g_.sites(); }

  double operator[](std::int64_t i) const { return v_[static_cast<std::size_t>(i)]; }
  double& operator[](std::int64_t i) { return v_[static_cast<std::size_t>(i)]; }

  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  template <class F>
  static GridField sample(Torus g, F&& f) {
    GridField out(g);
    for (std::int64_t i = 0; i < g.sites(); ++i) out[i] = f(g.position(i));
    return out;
  }

  double min() const {
    double m = v_[0];
    for (double x : v_) m = std::min(m, x);
    return m;
  }
  double max() const {
    double m = v_[0];
    for (double x : v_) m = std::max(m, x);
    return m;
  }
};

/// Normalized lattice inner product (2n+1)^{-d} sum_x f(x) g(x).
double inner_product_discrete(const GridField& f, const GridField& g);

}  // namespace sseplab
