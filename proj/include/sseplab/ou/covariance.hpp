#pragma once

#include <Eigen/Dense>

#include "sseplab/ou/band_limited_profile.hpp"
#include "sseplab/ou/gaussian_law.hpp"

namespace sseplab {

/// Covariance of the initial fluctuation field over the K-band real basis:
/// cov[a,b] = <rho(1-rho) varsigma_a, varsigma_b>, assembled exactly from the
/// finite Fourier convolution of rho - rho^2.
Eigen::MatrixXd initial_covariance_matrix(const BandLimitedProfile& rho,
                                          const RealModeBasis& basis);

/// Centered Gaussian law with the initial covariance.
GaussianLaw initial_covariance(const BandLimitedProfile& rho, int K,
                               double noise_prefactor = kNoisePrefactorFourPiSq);

/// Accumulated noise covariance
///   V_t[phi,psi] = prefactor * int_0^t < Phi(P_s rho) grad P_{t-s} phi . grad
///                  P_{t-s} psi > ds,    Phi(x) = x(1-x),
/// over the K-band real basis. Every time integral is a finite sum of
/// exponential integrals evaluated in closed form; decay rates are grouped by
/// their integer class so the degenerate t e^{-alpha t} branch is detected
/// exactly.
Eigen::MatrixXd covariance_V(const BandLimitedProfile& rho0, double t, int K,
                             double noise_prefactor = kNoisePrefactorFourPiSq);

/// Oracle: same integral by composite trapezoid rule with `points` panels.
Eigen::MatrixXd covariance_V_trapezoid(const BandLimitedProfile& rho0, double t, int K,
                                       double noise_prefactor, int points);

/// Oracle: same integral by adaptive Gauss-Kronrod quadrature per entry.
Eigen::MatrixXd covariance_V_adaptive(const BandLimitedProfile& rho0, double t, int K,
                                      double noise_prefactor);

/// Directional derivative of V_t at rho0 in direction h: the integrand weight
/// Phi(P_s rho) is replaced by Phi'(P_s rho) P_s h = (1 - 2 P_s rho) P_s h.
Eigen::MatrixXd covariance_derivative_DV(const BandLimitedProfile& rho0,
                                         const BandLimitedProfile& h, double t, int K,
                                         double noise_prefactor = kNoisePrefactorFourPiSq);

/// Heat-propagated mean coordinates of the initial field.
Eigen::VectorXd mean_vector(const SpectralField& zeta0, double t,
                            const RealModeBasis& basis);

/// Marginal law at time t: mean propagated by the heat semigroup, covariance
/// propagated entrywise and augmented by V_t. Truncation and noise prefactor
/// are inherited from the initial law.
GaussianLaw law_at_time(const BandLimitedProfile& rho0, const GaussianLaw& zeta0_law,
                        double t);

}  // namespace sseplab
