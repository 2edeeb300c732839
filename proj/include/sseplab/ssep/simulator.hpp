#pragma once

#include <cstdint>

#include "sseplab/ssep/configuration.hpp"
#include "sseplab/ssep/rng.hpp"
#include "sseplab/torus/grid_field.hpp"

namespace sseplab {

struct SimClock {
  double t = 0.0;
  std::uint64_t events = 0;
};

/// Independent Bernoulli(rho0(x)) occupancies. Rejects profiles outside [0,1].
Configuration sample_initial(const GridField& rho0, Rng& rng);

/// Exclusion dynamics: every unordered nearest-neighbor edge swaps at rate
/// (2n+1)^2/2, realized as a Gillespie chain whose total rate counts all
/// d*(2n+1)^d edges (swaps across equal occupancies are no-ops).
void simulate(Configuration& eta, SimClock& clock, double t_end, Rng& rng);

/// Lattice heat evolution of the density profile.
GridField mean_field(const GridField& rho0, double t);

/// zeta_t(x) = (2n+1)^{d/2} (eta(x) - rho_t(x))
GridField fluctuation_field(const Configuration& eta, const GridField& rho_t);

}  // namespace sseplab
