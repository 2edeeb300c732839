#include "sseplab/harness/curves.hpp"

#include <cmath>
#include <stdexcept>

#include "sseplab/ou/covariance.hpp"
#include "sseplab/ssep/simulator.hpp"
#include "sseplab/ssep/two_point.hpp"
#include "sseplab/torus/operators.hpp"

namespace sseplab {

ErrorTable error_curve(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<double> particle, particle_stderr, gaussian;
  for (int n : cfg.n_list) {
    SampleMean p;
    switch (cfg.engine) {
      case Engine::kMonteCarlo:
        p = monte_carlo_expectation(cfg, n);
        break;
      case Engine::kExactTwoPoint:
        p.value = exact_expectation_second_moment(cfg, n);
        break;
      case Engine::kExactEnumeration:
        p.value = exact_enumeration_expectation(cfg, n);
        break;
    }
    particle.push_back(p.value);
    particle_stderr.push_back(p.standard_error);
    gaussian.push_back(gaussian_side_value(cfg, n).value);
  }
  return assemble_error_table(cfg.n_list, particle, particle_stderr, gaussian);
}

BerryEsseenResult berry_esseen_curve(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<double> particle, zeros, gaussian;
  for (int n : cfg.n_list) {
    particle.push_back(exact_initial_expectation(cfg.observable, cfg.rho0, n));
    zeros.push_back(0.0);
    const GaussianLaw law =
        initial_covariance(cfg.rho0, cfg.band_for(n), cfg.noise_prefactor);
    if (auto closed = gaussian_expectation_closed_form(cfg.observable, law)) {
      gaussian.push_back(*closed);
    } else {
      gaussian.push_back(gaussian_expectation_quadrature(cfg.observable, law));
    }
  }
  BerryEsseenResult result;
  result.table = assemble_error_table(cfg.n_list, particle, zeros, gaussian);
  bool fittable = result.table.rows.size() >= 3;
  for (const ErrorRow& row : result.table.rows) fittable = fittable && row.abs_error > 0.0;
  if (fittable) result.fit = fit_rate(result.table);
  return result;
}

double zeta_tau_zeta_statistic(const BandLimitedProfile& rho0, const SpectralField& f,
                               double t, int n, int axis) {
  const int d = rho0.field().dim();
  if (axis < 0 || axis >= d) {
    throw std::invalid_argument("zeta_tau_zeta_statistic: axis outside dimension");
  }
  Torus g(d, n);
  const TwoPointTable table = exact_two_point(project(rho0.field(), n), t);
  const GridField f_grid = project(f, n);
  double acc = 0.0;
  for (std::int64_t x = 0; x < g.sites(); ++x) {
    acc += f_grid[x] * table.v(x, g.neighbor(x, axis, 1));
  }
  return acc / static_cast<double>(g.sites());
}

double stationarity_gap(double c, double t, int n, double noise_prefactor) {
  BandLimitedProfile rho = BandLimitedProfile::constant(1, c);
  Torus g(1, n);
  const GridField rho_grid = project(rho.field(), n);
  const TwoPointTable table = exact_two_point(rho_grid, t);
  const GridField phi = GridField::sample(
      g, [](const std::array<double, 2>& x) { return std::sqrt(2.0) * std::cos(x[0]); });
  const double particle = second_moment(table, mean_field(rho_grid, t), phi, phi);

  const GaussianLaw law = law_at_time(rho, initial_covariance(rho, n, noise_prefactor), t);
  RealModeBasis basis(1, 1);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    if (basis.mode(i).trig == Trig::cosine) unit[i] = 1.0;
  }
  SpectralField phi_hat = basis.field_from_coordinates(unit);
  Eigen::VectorXd r = law.basis.coordinates(phi_hat);
  const double gaussian = r.dot(law.cov * r) + std::pow(r.dot(law.mean), 2);
  return std::abs(particle - gaussian);
}

}  // namespace sseplab
