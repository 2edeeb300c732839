#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sseplab/ssep/configuration.hpp"
#include "sseplab/torus/grid_field.hpp"

namespace sseplab {

/// Largest lattice for which the full state space (2^sites states) is
/// enumerated by the exact forward-equation solver.
inline constexpr std::int64_t kMaxExactSites = 16;

/// Product Bernoulli law: p(state) = prod_x rho0(x)^{eta_x} (1-rho0(x))^{1-eta_x}.
/// State index s encodes the occupancy of site i in bit i.
std::vector<double> product_initial_distribution(const GridField& rho0);

/// Integrates the forward equation dp/dt = Q p, where Q exchanges occupancies
/// across every nearest-neighbor edge at rate (2n+1)^2/2. The action of Q is
/// applied on the fly; no matrix is formed.
std::vector<double> evolve_master_distribution(std::vector<double> p, const Torus& g,
                                               double t, double rtol = 1e-12,
                                               double atol = 1e-14);

/// Product initial law evolved to time t.
std::vector<double> exact_master_distribution(const GridField& rho0, double t,
                                              double rtol = 1e-12, double atol = 1e-14);

Configuration configuration_from_state(const Torus& g, std::uint64_t state);

/// Occupation means E eta(x) under the distribution p.
GridField site_means(const std::vector<double>& p, const Torus& g);

/// Dense rate matrix Q with Q(s', s) = jump rate s -> s' and diagonal chosen so
/// columns sum to zero. Only for cross-checks on very small lattices.
Eigen::MatrixXd dense_rate_matrix(const Torus& g);

/// E f(eta) under p, accumulated with compensated summation in state order.
template <class F>
double master_expectation(const std::vector<double>& p, const Torus& g, F&& f) {
  double acc = 0.0;
  double comp = 0.0;
  for (std::uint64_t s = 0; s < p.size(); ++s) {
    double term = p[s] * f(configuration_from_state(g, s));
    double y = term - comp;
    double next = acc + y;
    comp = (next - acc) - y;
    acc = next;
  }
  return acc;
}

}  // namespace sseplab
