#include "sseplab/harness/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "sseplab/harness/curves.hpp"
#include "sseplab/obs/observable.hpp"
#include "sseplab/ou/covariance.hpp"
#include "sseplab/ssep/configuration.hpp"
#include "sseplab/ssep/generator_expansion.hpp"
#include "sseplab/ssep/master_equation.hpp"
#include "sseplab/ssep/rng.hpp"
#include "sseplab/ssep/simulator.hpp"
#include "sseplab/ssep/two_point.hpp"
#include "sseplab/torus/bilinear_form.hpp"
#include "sseplab/torus/dft.hpp"
#include "sseplab/torus/operators.hpp"
#include "sseplab/torus/real_basis.hpp"

namespace sseplab {
namespace {

constexpr std::uint64_t kDiagnosticSeedSalt = 0xD1A6005EEDULL;

SpectralField random_hermitian_field(int d, int K, Rng& rng) {
  SpectralField f(d, K);
  for (std::int64_t i = 0; i < f.size(); ++i) {
    ModeIndex k = f.mode_at(i);
    if (k == ModeIndex{0, 0}) {
      f.set_coeff(k, {2.0 * rng.uniform() - 1.0, 0.0});
    } else if (lex_positive(k, d)) {
      std::complex<double> c{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
      f.set_coeff(k, c);
      f.set_coeff(ModeIndex{-k[0], -k[1]}, std::conj(c));
    }
  }
  return f;
}

DiagnosticCheck residual_check(std::string name, double value, double bound,
                               std::string detail) {
  DiagnosticCheck c;
  c.name = std::move(name);
  c.value = value;
  c.bound = bound;
  c.pass = value <= bound;
  c.detail = std::move(detail);
  return c;
}

DiagnosticCheck skipped_check(std::string name, std::string detail) {
  DiagnosticCheck c;
  c.name = std::move(name);
  c.skipped = true;
  c.pass = true;
  c.detail = std::move(detail);
  return c;
}

double slope_of(const std::vector<double>& ns, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = std::log(ns[i]);
    const double y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

DiagnosticCheck duality_check(int d, int n, Rng& rng) {
  Torus g(d, n);
  GridField zeta(g);
  for (std::int64_t i = 0; i < g.sites(); ++i) zeta[i] = rng.normal();
  double worst = 0.0;
  for (int K : {std::max(1, n - 1), n, n + 3}) {
    SpectralField phi = random_hermitian_field(d, K, rng);
    const double spectral = l2_pairing(extend(zeta), phi);
    const double lattice = inner_product_discrete(project(phi, n), zeta);
    worst = std::max(worst, std::abs(spectral - lattice));
  }
  std::ostringstream os;
  os << "spectral vs lattice pairing, d=" << d << " n=" << n;
  return residual_check("duality_pairing", worst, 1e-12, os.str());
}

DiagnosticCheck summation_by_parts_check(int d, int n, Rng& rng) {
  Torus g(d, n);
  GridField f(g), h(g);
  for (std::int64_t i = 0; i < g.sites(); ++i) {
    f[i] = rng.normal();
    h[i] = rng.normal();
  }
  double grad_sum = 0.0;
  for (int j = 0; j < d; ++j) {
    grad_sum += inner_product_discrete(discrete_derivative(f, j), discrete_derivative(h, j));
  }
  const double lap = inner_product_discrete(discrete_laplacian(f), h);
  std::ostringstream os;
  os << "gradient pairing vs Laplacian, d=" << d << " n=" << n;
  return residual_check("summation_by_parts", std::abs(grad_sum + lap), 1e-12, os.str());
}

DiagnosticCheck eigenvalue_bounds_check(int d, int n) {
  SpectralField probe(d, n);
  double worst = 0.0;
  for (std::int64_t i = 0; i < probe.size(); ++i) {
    ModeIndex k = probe.mode_at(i);
    const double lambda = eigenvalue_lambda(k, n, d);
    const double norm_sq = mode_norm_sq(k, d);
    worst = std::max(worst, norm_sq / 3.0 - lambda);
    worst = std::max(worst, lambda - norm_sq);
  }
  std::ostringstream os;
  os << "|k|^2/3 <= lambda_k <= |k|^2 over the resolvable band, n=" << n;
  return residual_check("eigenvalue_bounds", worst, 1e-12, os.str());
}

DiagnosticCheck interpolation_rate_check(const std::vector<int>& n_list) {
  if (n_list.size() < 3) {
    return skipped_check("interpolation_rate", "needs at least 3 ladder entries");
  }
  std::vector<double> ns, errs;
  for (int n : n_list) {
    Torus g(1, n);
    GridField f = GridField::sample(
        g, [](const std::array<double, 2>& x) { return std::exp(std::cos(x[0])); });
    SpectralField ext = extend(f);
    double acc = 0.0;
    const int pts = 4096;
    for (int i = 0; i < pts; ++i) {
      const double x = kTwoPi * i / pts;
      const double diff = ext.evaluate({x, 0.0}) - std::exp(std::cos(x));
      acc += diff * diff;
    }
    ns.push_back(static_cast<double>(n));
    errs.push_back(std::sqrt(acc / pts));
  }
  const double slope = slope_of(ns, errs);
  return residual_check("interpolation_rate", slope, -0.9,
                        "log-log slope of the spectral interpolation error");
}

DiagnosticCheck laplacian_rate_check(const std::vector<int>& n_list) {
  if (n_list.size() < 3) {
    return skipped_check("laplacian_rate", "needs at least 3 ladder entries");
  }
  SpectralField g(1, 3);
  g.set_coeff(ModeIndex{0, 0}, {0.4, 0.0});
  g.set_coeff(ModeIndex{1, 0}, {0.3, -0.1});
  g.set_coeff(ModeIndex{2, 0}, {-0.15, 0.05});
  g.set_coeff(ModeIndex{3, 0}, {0.02, 0.07});
  g.enforce_hermitian();
  std::vector<double> ns, errs;
  for (int n : n_list) {
    SpectralField lhs = extend(discrete_laplacian(project(g, n)));
    double acc = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
      ModeIndex k = g.mode_at(i);
      const std::complex<double> rhs = -mode_norm_sq(k, 1) * g.coeff(k);
      acc += std::norm(lhs.coeff(k) - rhs);
    }
    ns.push_back(static_cast<double>(n));
    errs.push_back(std::sqrt(acc));
  }
  const double slope = slope_of(ns, errs);
  return residual_check("laplacian_rate", slope, -0.9,
                        "log-log slope of discrete-vs-continuum Laplacian error");
}

DiagnosticCheck generator_expansion_check(int d, int n_cap, Rng& rng) {
  const int n = d == 1 ? std::min(n_cap, 8) : std::min(n_cap, 2);
  Torus g(d, std::max(1, n));
  GridField rho0 = GridField::sample(g, [](const std::array<double, 2>& x) {
    return 0.5 + 0.3 * std::cos(x[0]);
  });
  GridField rho_t = mean_field(rho0, 0.03);
  RealModeBasis basis(d, std::max(1, g.n - 1));
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    Configuration eta(g);
    for (std::int64_t i = 0; i < g.sites(); ++i) eta.set(i, rng.bernoulli(0.5));

    SpectralField phi = random_hermitian_field(d, g.n + 1, rng);
    auto linear_f = [&](const Configuration& c) {
      return inner_product_discrete(project(phi, g.n), fluctuation_field(c, rho_t));
    };
    worst = std::max(worst, std::abs(generator_apply_bruteforce(eta, linear_f) -
                                     generator_expansion_linear(phi, eta)));

    Eigen::MatrixXd m(basis.size(), basis.size());
    for (int i = 0; i < basis.size(); ++i) {
      for (int j = i; j < basis.size(); ++j) {
        m(i, j) = m(j, i) = rng.uniform() - 0.5;
      }
    }
    BilinearForm a(basis, m);
    auto quadratic_f = [&](const Configuration& c) {
      SpectralField ext = dft_forward(fluctuation_field(c, rho_t));
      return a.apply(ext, ext);
    };
    worst = std::max(worst, std::abs(generator_apply_bruteforce(eta, quadratic_f) -
                                     generator_expansion_quadratic(a, rho_t, eta)));
  }
  std::ostringstream os;
  os << "brute-force generator vs closed expansion, 20 random configurations, n=" << g.n;
  return residual_check("generator_expansion", worst, 1e-9, os.str());
}

DiagnosticCheck stationarity_check(double noise_prefactor, int n) {
  const double c = 0.35;
  const double gap = stationarity_gap(c, 0.1, n, noise_prefactor);
  std::ostringstream os;
  os << "equilibrium variance gap at density " << c << ", n=" << n << ", prefactor "
     << noise_prefactor;
  return residual_check("stationarity", gap, 2e-3, os.str());
}

DiagnosticCheck two_point_psd_check(const ExperimentConfig& cfg, int n) {
  const GridField rho_grid = project(cfg.rho0.field(), n);
  const TwoPointTable table = exact_two_point(rho_grid, cfg.t);
  RealModeBasis basis(cfg.dim, std::min(n, 4));
  Eigen::MatrixXd moments =
      pairing_moment_matrix(table, mean_field(rho_grid, cfg.t), basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(moments);
  std::ostringstream os;
  os << "smallest eigenvalue of the pairing moment matrix, n=" << n;
  DiagnosticCheck check =
      residual_check("two_point_psd", -es.eigenvalues().minCoeff(), 1e-10, os.str());
  return check;
}

double gradient_sup_norm(const GridField& rho_grid) {
  double worst = 0.0;
  for (int j = 0; j < rho_grid.torus().d; ++j) {
    GridField der = discrete_derivative(rho_grid, j);
    worst = std::max(worst, std::max(std::abs(der.min()), std::abs(der.max())));
  }
  return worst;
}

DiagnosticCheck sobolev_bound_check(const ExperimentConfig& cfg, int n) {
  Torus g(cfg.dim, n);
  const double smoothness = cfg.dim == 1 ? 1.0 : 1.5;
  const GridField rho_grid = project(cfg.rho0.field(), n);
  const TwoPointTable table = exact_two_point(rho_grid, cfg.t);
  const GridField rho_t = mean_field(rho_grid, cfg.t);

  double diag = 0.0;
  for (std::int64_t x = 0; x < g.sites(); ++x) diag += rho_t[x] * (1.0 - rho_t[x]);
  SpectralField box(cfg.dim, n);
  double value = 0.0;
  for (std::int64_t i = 0; i < box.size(); ++i) {
    ModeIndex k = box.mode_at(i);
    double off = 0.0;
    for (std::int64_t x = 0; x < g.sites(); ++x) {
      const std::array<double, 2> px = g.position(x);
      for (std::int64_t y = 0; y < g.sites(); ++y) {
        if (x == y) continue;
        const std::array<double, 2> py = g.position(y);
        double phase = 0.0;
        for (int j = 0; j < cfg.dim; ++j) phase += k[j] * (px[j] - py[j]);
        off += std::cos(phase) * table.v(x, y);
      }
    }
    value += std::pow(1.0 + mode_norm_sq(k, cfg.dim), -smoothness) * (diag + off) /
             static_cast<double>(g.sites());
  }

  const double grad = gradient_sup_norm(rho_grid);
  const double bound = sobolev_constant(cfg.dim, smoothness, 512) *
                       (1.0 + 2.0 * kPi * kPi * cfg.t * grad * grad);
  std::ostringstream os;
  os << "exact mean squared H_{-" << smoothness << "} norm vs mode-sum bound, n=" << n;
  return residual_check("sobolev_bound", value, bound, os.str());
}

DiagnosticCheck inner_product_bound_check(const ExperimentConfig& cfg, int n) {
  Torus g(cfg.dim, n);
  const GridField rho_grid = project(cfg.rho0.field(), n);
  const TwoPointTable table = exact_two_point(rho_grid, cfg.t);
  const GridField phi = GridField::sample(g, [](const std::array<double, 2>& x) {
    return std::sqrt(2.0) * std::cos(x[0]);
  });
  const double value = second_moment(table, mean_field(rho_grid, cfg.t), phi, phi);
  const double grad = gradient_sup_norm(rho_grid);
  const double bound = 1.0 + 2.0 * kPi * kPi * cfg.t * grad * grad;
  std::ostringstream os;
  os << "second moment of the unit-mode pairing vs gradient bound, n=" << n;
  return residual_check("inner_product_bound", value, bound, os.str());
}

DiagnosticCheck covariance_quadrature_check(const ExperimentConfig& cfg) {
  const int K = 2;
  Eigen::MatrixXd closed = covariance_V(cfg.rho0, cfg.t, K, cfg.noise_prefactor);
  Eigen::MatrixXd adaptive = covariance_V_adaptive(cfg.rho0, cfg.t, K, cfg.noise_prefactor);
  return residual_check("covariance_quadrature", (closed - adaptive).cwiseAbs().maxCoeff(),
                        1e-8, "closed-form noise covariance vs adaptive quadrature, K=2");
}

DiagnosticCheck covariance_hs_growth_check(const ExperimentConfig& cfg) {
  const double weight_exponent = 1.0;
  const int K = cfg.dim == 1 ? 3 : 2;
  RealModeBasis basis(cfg.dim, K);
  double mode_sum = 0.0;
  for (int a = 0; a < basis.size(); ++a) {
    mode_sum += std::pow(1.0 + basis.mode_norm_sq(a), -weight_exponent) *
                std::sqrt(basis.mode_norm_sq(a));
  }
  const double kappa = cfg.noise_prefactor;
  const double c_bound = kappa * kappa / (16.0 * kPi * kPi) * mode_sum * mode_sum;
  const double t = std::max(cfg.t, 1e-3);
  Eigen::MatrixXd v = covariance_V(cfg.rho0, t, K, cfg.noise_prefactor);
  double hs_sq = 0.0;
  for (int a = 0; a < basis.size(); ++a) {
    for (int b = 0; b < basis.size(); ++b) {
      hs_sq += std::pow(1.0 + basis.mode_norm_sq(a), -weight_exponent) *
               std::pow(1.0 + basis.mode_norm_sq(b), -weight_exponent) * v(a, b) * v(a, b);
    }
  }
  return residual_check("covariance_hs_growth", hs_sq, c_bound * t,
                        "weighted Hilbert-Schmidt norm of the noise covariance vs linear"
                        " growth bound");
}

DiagnosticCheck simulator_vs_master_check(std::uint64_t master_seed) {
  Torus g(1, 1);
  GridField rho0 = GridField::sample(g, [](const std::array<double, 2>& x) {
    return 0.5 + 0.3 * std::cos(x[0]);
  });
  const double t = 0.05;
  const std::vector<double> p = exact_master_distribution(rho0, t);
  const GridField exact = site_means(p, g);

  const int replicas = 20000;
  std::vector<double> counts(static_cast<std::size_t>(g.sites()), 0.0);
  for (int r = 0; r < replicas; ++r) {
    Rng rng = replica_stream(master_seed ^ kDiagnosticSeedSalt, static_cast<std::uint64_t>(r));
    Configuration eta = sample_initial(rho0, rng);
    SimClock clock;
    simulate(eta, clock, t, rng);
    for (std::int64_t i = 0; i < g.sites(); ++i) {
      counts[static_cast<std::size_t>(i)] += eta.get(i) ? 1.0 : 0.0;
    }
  }
  double worst_sigma = 0.0;
  for (std::int64_t i = 0; i < g.sites(); ++i) {
    const double mean = counts[static_cast<std::size_t>(i)] / replicas;
    const double sigma =
        std::sqrt(std::max(mean * (1.0 - mean), 1e-12) / static_cast<double>(replicas));
    worst_sigma = std::max(worst_sigma, std::abs(mean - exact[i]) / sigma);
  }
  return residual_check("simulator_vs_master", worst_sigma, 5.0,
                        "site means, 20000 replicas vs master equation, in sigma units");
}

DiagnosticCheck master_vs_two_point_check() {
  Torus g(1, 2);
  GridField rho0 = GridField::sample(g, [](const std::array<double, 2>& x) {
    return 0.5 + 0.3 * std::cos(x[0]);
  });
  const double t = 0.05;
  const GridField phi = GridField::sample(g, [](const std::array<double, 2>& x) {
    return std::sqrt(2.0) * std::cos(x[0]);
  });
  const TwoPointTable table = exact_two_point(rho0, t);
  const GridField rho_t = mean_field(rho0, t);
  const double via_ode = second_moment(table, rho_t, phi, phi);

  const std::vector<double> p = exact_master_distribution(rho0, t);
  const double via_master = master_expectation(p, g, [&](const Configuration& eta) {
    const double pairing = inner_product_discrete(phi, fluctuation_field(eta, rho_t));
    return pairing * pairing;
  });
  return residual_check("master_vs_two_point", std::abs(via_ode - via_master), 1e-8,
                        "pairing second moment, correlation ODE vs full enumeration, n=2");
}

}  // namespace

DiagnosticsReport diagnostics_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  DiagnosticsReport report;
  Rng rng(Rng::mix(cfg.master_seed ^ kDiagnosticSeedSalt));

  const int n_max = cfg.n_list.back();
  const int n_identity = std::min(n_max, 16);
  const int n_oracle = cfg.dim == 1 ? std::min(n_max, 16) : std::min(n_max, 4);

  report.checks.push_back(duality_check(cfg.dim, n_identity, rng));
  report.checks.push_back(summation_by_parts_check(cfg.dim, n_identity, rng));
  report.checks.push_back(eigenvalue_bounds_check(cfg.dim, n_identity));
  report.checks.push_back(interpolation_rate_check(cfg.n_list));
  report.checks.push_back(laplacian_rate_check(cfg.n_list));
  report.checks.push_back(generator_expansion_check(cfg.dim, n_max, rng));
  report.checks.push_back(stationarity_check(cfg.noise_prefactor, std::min(n_max, 16)));
  report.checks.push_back(two_point_psd_check(cfg, n_oracle));
  report.checks.push_back(sobolev_bound_check(cfg, n_oracle));
  report.checks.push_back(inner_product_bound_check(cfg, n_oracle));
  report.checks.push_back(covariance_quadrature_check(cfg));
  report.checks.push_back(covariance_hs_growth_check(cfg));
  report.checks.push_back(simulator_vs_master_check(cfg.master_seed));
  report.checks.push_back(master_vs_two_point_check());
  return report;
}

std::string diagnostics_text(const DiagnosticsReport& report) {
  std::ostringstream os;
  for (const DiagnosticCheck& c : report.checks) {
    os << (c.skipped ? "[SKIP]" : (c.pass ? "[PASS]" : "[FAIL]")) << ' ' << c.name;
    if (!c.skipped) os << " value " << c.value << " vs bound " << c.bound;
    if (!c.detail.empty()) os << " (" << c.detail << ')';
    os << '\n';
  }
  return os.str();
}

}  // namespace sseplab
