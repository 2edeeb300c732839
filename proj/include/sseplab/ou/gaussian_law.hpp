#pragma once

#include <Eigen/Dense>

#include "sseplab/ssep/rng.hpp"
#include "sseplab/torus/real_basis.hpp"

namespace sseplab {

/// Noise strength in front of the covariance time integral. The default 4 pi^2
/// matches the quadratic variation of the particle pairing martingale and is
/// the unique value that keeps the Bernoulli equilibrium covariance
/// stationary; the halved value is selectable for side-by-side comparison
/// (see the stationarity arbitration diagnostic).
inline constexpr double kNoisePrefactorFourPiSq = 4.0 * kPi * kPi;
inline constexpr double kNoisePrefactorTwoPiSq = 2.0 * kPi * kPi;

/// Most negative covariance eigenvalue tolerated before sampling refuses;
/// eigenvalues inside [floor, 0] are clamped to zero.
inline constexpr double kCovarianceEigenvalueFloor = -1e-10;

/// Gaussian law of the fluctuation field over the real trigonometric basis of
/// a K-band. Immutable after construction.
struct GaussianLaw {
  RealModeBasis basis;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  double noise_prefactor = kNoisePrefactorFourPiSq;
};

/// Draws mean + S xi with S the symmetric PSD square root of cov. Construction
/// performs the spectral decomposition once; sampling reuses it.
class GaussianSampler {
 public:
  explicit GaussianSampler(const GaussianLaw& law);

  Eigen::VectorXd sample_coordinates(Rng& rng) const;
  SpectralField sample(Rng& rng) const;

  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  RealModeBasis basis_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd sqrt_;
  double min_eigenvalue_ = 0.0;
};

/// One-off draw from the law.
SpectralField sample(const GaussianLaw& law, Rng& rng);

}  // namespace sseplab
