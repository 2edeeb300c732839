#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace sseplab {

/// Counter-based generator: a 64-bit Weyl sequence pushed through the
/// SplitMix64 finalizer. Streams are keyed per replica so replica r of a run
/// produces the same draws no matter how work is scheduled across threads.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// uniform on [0, 1) with 53 random bits
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// uniform on (0, 1], safe as a log argument
  double uniform_positive() { return 1.0 - uniform(); }

  double exponential(double rate) { return -std::log(uniform_positive()) / rate; }

  bool bernoulli(double p) { return uniform() < p; }

  /// unbiased integer in {0, ..., bound-1}
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  /// standard normal via the polar method
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Independent stream for one replica of a run.
inline Rng replica_stream(std::uint64_t master_seed, std::uint64_t replica_index) {
  std::uint64_t key = Rng::mix(replica_index + 0x632BE59BD9B4E019ULL);
  return Rng(Rng::mix(master_seed ^ key) + key);
}

}  // namespace sseplab
