#include "sseplab/ou/band_limited_profile.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sseplab {

namespace {
constexpr int kCheckPointsPerAxis = 1024;
constexpr double kRangeSlack = 1e-12;
}  // namespace

BandLimitedProfile::BandLimitedProfile(SpectralField coeffs) : field_(std::move(coeffs)) {
  double asym = field_.enforce_hermitian();
  if (asym > 1e-12)
    throw std::invalid_argument("BandLimitedProfile: coefficients are not Hermitian");
  const int d = field_.dim();
  const std::int64_t per_axis = kCheckPointsPerAxis;
  const std::int64_t total = d == 1 ? per_axis : per_axis * per_axis;
  for (std::int64_t i = 0; i < total; ++i) {
    std::array<double, 2> x{0.0, 0.0};
    x[0] = kTwoPi * static_cast<double>(i % per_axis) / per_axis;
    if (d == 2) x[1] = kTwoPi * static_cast<double>(i / per_axis) / per_axis;
    double v = field_.evaluate(x);
    if (v < -kRangeSlack || v > 1.0 + kRangeSlack) {
      std::ostringstream msg;
      msg << "BandLimitedProfile: value " << v << " outside [0,1] at x = (" << x[0];
      if (d == 2) msg << ", " << x[1];
      msg << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

SpectralField BandLimitedProfile::bernoulli_variance() const {
  const int d = field_.dim();
  const int K = field_.truncation();
  SpectralField g(d, 2 * K);
  for (std::int64_t i = 0; i < field_.size(); ++i)
    g.set_coeff(field_.mode_at(i), field_.coeffs()[static_cast<std::size_t>(i)]);
  for (std::int64_t i = 0; i < field_.size(); ++i) {
    ModeIndex k1 = field_.mode_at(i);
    for (std::int64_t j = 0; j < field_.size(); ++j) {
      ModeIndex k2 = field_.mode_at(j);
      ModeIndex m{k1[0] + k2[0], d == 2 ? k1[1] + k2[1] : 0};
      std::complex<double> prod = field_.coeffs()[static_cast<std::size_t>(i)] *
                                  field_.coeffs()[static_cast<std::size_t>(j)];
      g.set_coeff(m, g.coeff(m) - prod);
    }
  }
  g.enforce_hermitian();
  return g;
}

BandLimitedProfile BandLimitedProfile::constant(int d, double c) {
  SpectralField f(d, 1);
  f.set_coeff(ModeIndex{0, 0}, {c, 0.0});
  return BandLimitedProfile(std::move(f));
}

BandLimitedProfile BandLimitedProfile::cosine(int d, double base, double amp,
                                              const ModeIndex& k, double phase) {
  int K = std::max(std::abs(k[0]), d == 2 ? std::abs(k[1]) : 0);
  SpectralField f(d, std::max(K, 1));
  f.set_coeff(ModeIndex{0, 0}, {base, 0.0});
  std::complex<double> half{0.5 * amp * std::cos(phase), 0.5 * amp * std::sin(phase)};
  f.set_coeff(k, f.coeff(k) + half);
  ModeIndex mk{-k[0], -k[1]};
  f.set_coeff(mk, f.coeff(mk) + std::conj(half));
  return BandLimitedProfile(std::move(f));
}

}  // namespace sseplab
