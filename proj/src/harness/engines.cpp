#include "sseplab/harness/engines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sseplab/ou/covariance.hpp"
#include "sseplab/ssep/master_equation.hpp"
#include "sseplab/ssep/simulator.hpp"
#include "sseplab/ssep/two_point.hpp"
#include "sseplab/torus/operators.hpp"

namespace sseplab {
namespace {

// Replica index space reserved for the Gaussian-side sampler so its stream
// never collides with particle replicas.
constexpr std::uint64_t kGaussianStreamBase = 0x9E3779B97F4A7C15ULL;

// Entry cap for the dense two-point ODE (sites squared).
constexpr std::int64_t kTwoPointEntryCap = 10000;

double kahan_mean(const std::vector<double>& values) {
  double acc = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double next = acc + y;
    comp = (next - acc) - y;
    acc = next;
  }
  return acc / static_cast<double>(values.size());
}

}  // namespace

SampleMean monte_carlo_expectation(const ExperimentConfig& cfg, int n) {
  cfg.validate();
  if (cfg.replicas < 2) {
    throw std::invalid_argument("monte_carlo_expectation: need >= 2 replicas");
  }
  const GridField rho_grid = project(cfg.rho0.field(), n);
  const GridField rho_t = mean_field(rho_grid, cfg.t);

  std::vector<double> values(static_cast<std::size_t>(cfg.replicas), 0.0);
  auto worker = [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t r = lo; r < hi; ++r) {
      Rng rng = replica_stream(cfg.master_seed, static_cast<std::uint64_t>(r));
      Configuration eta = sample_initial(rho_grid, rng);
      SimClock clock;
      simulate(eta, clock, cfg.t, rng);
      values[static_cast<std::size_t>(r)] =
          cfg.observable.eval_on_particle(fluctuation_field(eta, rho_t));
    }
  };

  const int workers = static_cast<int>(
      std::min<std::int64_t>(cfg.threads, std::max<std::int64_t>(cfg.replicas, 1)));
  if (workers <= 1) {
    worker(0, cfg.replicas);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (cfg.replicas + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t lo = w * chunk;
      const std::int64_t hi = std::min<std::int64_t>(lo + chunk, cfg.replicas);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (std::thread& th : pool) th.join();
  }

  SampleMean out;
  out.replicas = cfg.replicas;
  out.value = kahan_mean(values);
  double acc = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double term = (v - out.value) * (v - out.value);
    const double y = term - comp;
    const double next = acc + y;
    comp = (next - acc) - y;
    acc = next;
  }
  const double r = static_cast<double>(cfg.replicas);
  out.standard_error = std::sqrt(acc / (r - 1.0) / r);
  return out;
}

double exact_expectation_second_moment(const ExperimentConfig& cfg, int n) {
  cfg.validate();
  Torus g(cfg.dim, n);
  if (g.sites() * g.sites() > kTwoPointEntryCap) {
    throw std::invalid_argument(
        "exact_expectation_second_moment: lattice above the two-point oracle cap");
  }
  const Observable& obs = cfg.observable;
  const GridField rho_grid = project(cfg.rho0.field(), n);
  const TwoPointTable table = exact_two_point(rho_grid, cfg.t);
  const GridField rho_t = mean_field(rho_grid, cfg.t);

  if (obs.kind() == ObservableKind::kQuadratic) {
    const BilinearForm& a = obs.form();
    Eigen::MatrixXd moments = pairing_moment_matrix(table, rho_t, a.basis());
    return a.entries().cwiseProduct(moments).sum();
  }
  if (obs.kind() == ObservableKind::kSmooth && obs.function().is_polynomial()) {
    const std::vector<double>& c = obs.function().coefficients();
    if (obs.fields().size() == 1 && c.size() <= 3) {
      // The field is exactly centered, so odd terms vanish.
      const GridField phi = project(obs.fields().front(), n);
      double value = c[0];
      if (c.size() == 3) value += c[2] * second_moment(table, rho_t, phi, phi);
      return value;
    }
    if (obs.fields().size() == 2 && c.size() == 2 && c[0] == 0.0 && c[1] == 1.0) {
      return second_moment(table, rho_t, project(obs.fields()[0], n),
                           project(obs.fields()[1], n));
    }
  }
  throw std::invalid_argument(
      "exact_expectation_second_moment: observable is not quadratic in the field");
}

double exact_enumeration_expectation(const ExperimentConfig& cfg, int n) {
  cfg.validate();
  Torus g(cfg.dim, n);
  const GridField rho_grid = project(cfg.rho0.field(), n);
  const std::vector<double> p = exact_master_distribution(rho_grid, cfg.t);
  const GridField rho_t = mean_field(rho_grid, cfg.t);
  return master_expectation(p, g, [&](const Configuration& eta) {
    return cfg.observable.eval_on_particle(fluctuation_field(eta, rho_t));
  });
}

GaussianLaw gaussian_law_for(const ExperimentConfig& cfg, int n) {
  const int band = cfg.band_for(n);
  GaussianLaw start = initial_covariance(cfg.rho0, band, cfg.noise_prefactor);
  if (cfg.zeta0_mode == InitialFieldMode::kDeterministicZero) {
    start.cov.setZero();
  }
  if (cfg.t == 0.0) return start;
  return law_at_time(cfg.rho0, start, cfg.t);
}

SampleMean gaussian_side_value(const ExperimentConfig& cfg, int n) {
  const GaussianLaw law = gaussian_law_for(cfg, n);
  SampleMean out;
  out.replicas = 0;
  if (auto closed = gaussian_expectation_closed_form(cfg.observable, law)) {
    out.value = *closed;
    return out;
  }
  if (cfg.observable.kind() == ObservableKind::kSmooth && cfg.observable.fields().size() == 1) {
    out.value = gaussian_expectation_quadrature(cfg.observable, law);
    return out;
  }
  const std::int64_t replicas = std::max<std::int64_t>(10 * cfg.replicas, 100000);
  Rng rng = replica_stream(cfg.master_seed, kGaussianStreamBase);
  return gaussian_expectation_monte_carlo(cfg.observable, law, replicas, rng);
}

}  // namespace sseplab
