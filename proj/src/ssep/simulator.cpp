#include "sseplab/ssep/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "sseplab/torus/operators.hpp"

namespace sseplab {

Configuration sample_initial(const GridField& rho0, Rng& rng) {
  const Torus& g = rho0.torus();
  for (std::int64_t i = 0; i < g.sites(); ++i)
    if (rho0[i] < 0.0 || rho0[i] > 1.0)
      throw std::invalid_argument("sample_initial: density outside [0,1]");
  Configuration eta(g);
  for (std::int64_t i = 0; i < g.sites(); ++i) eta.set(i, rng.bernoulli(rho0[i]));
  return eta;
}

void simulate(Configuration& eta, SimClock& clock, double t_end, Rng& rng) {
  const Torus& g = eta.torus();
  const std::int64_t sites = g.sites();
  const std::uint64_t edges = static_cast<std::uint64_t>(g.d) * sites;
  const double rate = 0.5 * static_cast<double>(g.len()) * g.len();
  const double total_rate = rate * static_cast<double>(edges);
  for (;;) {
    double wait = rng.exponential(total_rate);
    if (clock.t + wait >= t_end) {
      clock.t = t_end;
      return;
    }
    clock.t += wait;
    std::uint64_t e = rng.below(edges);
    int axis = static_cast<int>(e / static_cast<std::uint64_t>(sites));
    std::int64_t site = static_cast<std::int64_t>(e % static_cast<std::uint64_t>(sites));
    eta.swap_sites(site, g.neighbor(site, axis, 1));
    ++clock.events;
  }
}

GridField mean_field(const GridField& rho0, double t) {
  return heat_propagate_discrete(rho0, t);
}

GridField fluctuation_field(const Configuration& eta, const GridField& rho_t) {
  const Torus& g = rho_t.torus();
  if (!(eta.torus() == g))
    throw std::invalid_argument("fluctuation_field: lattice mismatch");
  const double scale = std::pow(static_cast<double>(g.len()), g.d * 0.5);
  GridField z(g);
  for (std::int64_t i = 0; i < g.sites(); ++i)
    z[i] = scale * ((eta.get(i) ? 1.0 : 0.0) - rho_t[i]);
  return z;
}

}  // namespace sseplab
