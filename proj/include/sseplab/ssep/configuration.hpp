#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "sseplab/torus/grid_field.hpp"

namespace sseplab {

/// Occupancy configuration of the lattice, one bit per site, row-major.
class Configuration {
 public:
  explicit Configuration(Torus g)
      : g_(g), bits_(static_cast<std::size_t>((g.sites() + 63) / 64), 0) {}

  const Torus& torus() const { return g_; }

  bool get(std::int64_t site) const {
    return (bits_[static_cast<std::size_t>(site >> 6)] >> (site & 63)) & 1ULL;
  }

  void set(std::int64_t site, bool v) {
    std::uint64_t mask = 1ULL << (site & 63);
    if (v)
      bits_[static_cast<std::size_t>(site >> 6)] |= mask;
    else
      bits_[static_cast<std::size_t>(site >> 6)] &= ~mask;
  }

  void swap_sites(std::int64_t a, std::int64_t b) {
    bool va = get(a), vb = get(b);
    if (va != vb) {
      set(a, vb);
      set(b, va);
    }
  }

  std::int64_t particle_count() const {
    std::int64_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
  }

  GridField to_grid() const {
    GridField f(g_);
    for (std::int64_t i = 0; i < g_.sites(); ++i) f[i] = get(i) ? 1.0 : 0.0;
    return f;
  }

  bool operator==(const Configuration& o) const {
    return g_ == o.g_ && bits_ == o.bits_;
  }

 private:
  Torus g_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace sseplab
