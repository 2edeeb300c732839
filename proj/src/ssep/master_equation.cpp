#include "sseplab/ssep/master_equation.hpp"

#include <stdexcept>
#include <utility>

#include "sseplab/ode/rk45.hpp"

namespace sseplab {

namespace {

void require_small(const Torus& g) {
  if (g.sites() > kMaxExactSites)
    throw std::invalid_argument("master equation: state space too large");
}

/// One (site, neighbor) bit pair per unordered edge.
std::vector<std::pair<int, int>> edge_list(const Torus& g) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(g.d * g.sites()));
  for (std::int64_t s = 0; s < g.sites(); ++s)
    for (int j = 0; j < g.d; ++j)
      edges.emplace_back(static_cast<int>(s), static_cast<int>(g.neighbor(s, j, 1)));
  return edges;
}

}  // namespace

std::vector<double> product_initial_distribution(const GridField& rho0) {
  const Torus& g = rho0.torus();
  require_small(g);
  for (std::int64_t i = 0; i < g.sites(); ++i)
    if (rho0[i] < 0.0 || rho0[i] > 1.0)
      throw std::invalid_argument("product_initial_distribution: density outside [0,1]");
  const std::uint64_t states = 1ULL << g.sites();
  std::vector<double> p(states);
  for (std::uint64_t s = 0; s < states; ++s) {
    double w = 1.0;
    for (std::int64_t i = 0; i < g.sites(); ++i)
      w *= ((s >> i) & 1ULL) ? rho0[i] : 1.0 - rho0[i];
    p[s] = w;
  }
  return p;
}

std::vector<double> evolve_master_distribution(std::vector<double> p, const Torus& g,
                                               double t, double rtol, double atol) {
  require_small(g);
  if (p.size() != (1ULL << g.sites()))
    throw std::invalid_argument("evolve_master_distribution: distribution size mismatch");
  if (t < 0.0) throw std::invalid_argument("evolve_master_distribution: negative time");
  if (t == 0.0) return p;

  const double rate = 0.5 * static_cast<double>(g.len()) * g.len();
  const auto edges = edge_list(g);
  auto rhs = [&](double, const std::vector<double>& y, std::vector<double>& dy) {
    std::fill(dy.begin(), dy.end(), 0.0);
    for (std::uint64_t s = 0; s < y.size(); ++s) {
      for (const auto& [a, b] : edges) {
        const std::uint64_t bit_a = (s >> a) & 1ULL;
        const std::uint64_t bit_b = (s >> b) & 1ULL;
        if (bit_a == bit_b) continue;
        const std::uint64_t sw = s ^ ((1ULL << a) | (1ULL << b));
        dy[s] += rate * (y[sw] - y[s]);
      }
    }
  };
  integrate_rk45(rhs, p, 0.0, t, rtol, atol);
  return p;
}

std::vector<double> exact_master_distribution(const GridField& rho0, double t,
                                              double rtol, double atol) {
  return evolve_master_distribution(product_initial_distribution(rho0), rho0.torus(), t,
                                    rtol, atol);
}

Configuration configuration_from_state(const Torus& g, std::uint64_t state) {
  Configuration eta(g);
  for (std::int64_t i = 0; i < g.sites(); ++i) eta.set(i, (state >> i) & 1ULL);
  return eta;
}

GridField site_means(const std::vector<double>& p, const Torus& g) {
  require_small(g);
  GridField m(g);
  for (std::uint64_t s = 0; s < p.size(); ++s)
    for (std::int64_t i = 0; i < g.sites(); ++i)
      if ((s >> i) & 1ULL) m[i] += p[s];
  return m;
}

Eigen::MatrixXd dense_rate_matrix(const Torus& g) {
  require_small(g);
  const std::uint64_t states = 1ULL << g.sites();
  const double rate = 0.5 * static_cast<double>(g.len()) * g.len();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(states),
                                            static_cast<Eigen::Index>(states));
  const auto edges = edge_list(g);
  for (std::uint64_t s = 0; s < states; ++s) {
    for (const auto& [a, b] : edges) {
      if (((s >> a) & 1ULL) == ((s >> b) & 1ULL)) continue;
      const std::uint64_t sw = s ^ ((1ULL << a) | (1ULL << b));
      q(static_cast<Eigen::Index>(sw), static_cast<Eigen::Index>(s)) += rate;
      q(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) -= rate;
    }
  }
  return q;
}

}  // namespace sseplab
