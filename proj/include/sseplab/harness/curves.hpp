#pragma once

#include <optional>

#include "sseplab/harness/engines.hpp"
#include "sseplab/harness/experiment.hpp"

namespace sseplab {

/// One row per ladder entry: particle expectation by the configured engine
/// against the matched Gaussian law on the same band.
ErrorTable error_curve(const ExperimentConfig& cfg);

struct BerryEsseenResult {
  ErrorTable table;
  /// Absent when any row has zero error (exact moment matches) or the ladder
  /// is too short for a fit.
  std::optional<RateFit> fit;
};

/// Time-zero comparison: exact convolution of the pairing distribution
/// against the Gaussian with the initial covariance, over cfg.n_list.
BerryEsseenResult berry_esseen_curve(const ExperimentConfig& cfg);

/// Lattice average (2n+1)^{-d} sum_x pr_n f(x) V_t(x, x+e_axis): the
/// deterministic-test-function reduction of the neighbor correlation of the
/// fluctuation field, computed from the exact two-point table.
double zeta_tau_zeta_statistic(const BandLimitedProfile& rho0, const SpectralField& f,
                               double t, int n, int axis);

/// |particle - gaussian| for the equilibrium variance of <sqrt2 cos x, zeta_t>
/// at density c: the particle side through the exact two-point oracle, the
/// Gaussian side through the propagated law with the given noise prefactor.
double stationarity_gap(double c, double t, int n, double noise_prefactor);

}  // namespace sseplab
