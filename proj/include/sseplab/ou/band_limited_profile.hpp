#pragma once

#include "sseplab/torus/spectral_field.hpp"

namespace sseplab {

/// Density profile with finitely many Fourier modes, validated to be real and
/// to take values in [0,1] on a dense check grid (1024 points per axis). The
/// band limitation keeps every covariance time integral in closed form.
class BandLimitedProfile {
 public:
  explicit BandLimitedProfile(SpectralField coeffs);

  int dim() const { return field_.dim(); }
  int truncation() const { return field_.truncation(); }
  const SpectralField& field() const { return field_; }

  double evaluate(const std::array<double, 2>& x) const { return field_.evaluate(x); }

  /// Fourier coefficients of rho(1-rho), band 2*truncation, by exact
  /// convolution of the coefficient sequences.
  SpectralField bernoulli_variance() const;

  static BandLimitedProfile constant(int d, double c);
  /// base + amp*cos(k.x + phase)
  static BandLimitedProfile cosine(int d, double base, double amp,
                                   const ModeIndex& k = ModeIndex{1, 0},
                                   double phase = 0.0);

 private:
  SpectralField field_;
};

}  // namespace sseplab
