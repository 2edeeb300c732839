#include "sseplab/ssep/generator_expansion.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sseplab/ssep/simulator.hpp"
#include "sseplab/torus/dft.hpp"
#include "sseplab/torus/operators.hpp"

namespace sseplab {
namespace {

SpectralField random_hermitian_field(int d, int K, std::mt19937& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SpectralField f(d, K);
  for (std::int64_t i = 0; i < f.size(); ++i) {
    ModeIndex k = f.mode_at(i);
    if (k == ModeIndex{0, 0}) {
      f.set_coeff(k, {dist(gen), 0.0});
    } else if (lex_positive(k, d)) {
      std::complex<double> c{dist(gen), dist(gen)};
      f.set_coeff(k, c);
      f.set_coeff(ModeIndex{-k[0], -k[1]}, std::conj(c));
    }
  }
  return f;
}

Configuration random_configuration(const Torus& g, std::mt19937& gen) {
  std::bernoulli_distribution coin(0.5);
  Configuration eta(g);
  for (std::int64_t i = 0; i < g.sites(); ++i) eta.set(i, coin(gen));
  return eta;
}

GridField cosine_density(Torus g, double base, double amp) {
  return GridField::sample(
      g, [&](const std::array<double, 2>& x) { return base + amp * std::cos(x[0]); });
}

TEST(GeneratorBruteforce, VanishesOnConstantsAndConservedQuantities) {
  Torus g(1, 3);
  std::mt19937 gen(2);
  Configuration eta = random_configuration(g, gen);
  double on_constant =
      generator_apply_bruteforce(eta, [](const Configuration&) { return 4.2; });
  EXPECT_EQ(on_constant, 0.0);
  double on_count = generator_apply_bruteforce(eta, [](const Configuration& c) {
    return static_cast<double>(c.particle_count());
  });
  EXPECT_EQ(on_count, 0.0);
}

TEST(GeneratorExpansion, LinearPairingCollapsesExactly) {
  std::mt19937 gen(11);
  for (int d = 1; d <= 2; ++d) {
    for (int n : {1, 2, 4, 8}) {
      if (d == 2 && n > 2) continue;
      Torus g(d, n);
      GridField rho_t = mean_field(cosine_density(g, 0.5, 0.3), 0.03);
      for (int rep = 0; rep < 25; ++rep) {
        // Test bands below, at, and above the lattice band.
        int K = (rep % 3 == 0) ? std::max(1, n - 1) : (rep % 3 == 1 ? n : n + 2);
        SpectralField phi = random_hermitian_field(d, K, gen);
        Configuration eta = random_configuration(g, gen);
        auto functional = [&](const Configuration& c) {
          GridField zeta = fluctuation_field(c, rho_t);
          return inner_product_discrete(project(phi, g.n), zeta);
        };
        double brute = generator_apply_bruteforce(eta, functional);
        double closed = generator_expansion_linear(phi, eta);
        EXPECT_NEAR(closed, brute, 1e-10 * std::max(1.0, std::abs(brute)))
            << "d=" << d << " n=" << n << " K=" << K << " rep=" << rep;
      }
    }
  }
}

TEST(GeneratorExpansion, QuadraticFormCollapsesExactly) {
  std::mt19937 gen(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int d = 1; d <= 2; ++d) {
    for (int n : {1, 2, 4, 8}) {
      if (d == 2 && n > 2) continue;
      Torus g(d, n);
      GridField rho_t = mean_field(cosine_density(g, 0.5, 0.3), 0.03);
      for (int rep = 0; rep < 15; ++rep) {
        int K = (rep % 3 == 0) ? std::max(1, n - 1) : (rep % 3 == 1 ? n : n + 1);
        RealModeBasis basis(d, K);
        Eigen::MatrixXd m(basis.size(), basis.size());
        for (int i = 0; i < basis.size(); ++i)
          for (int j = i; j < basis.size(); ++j) {
            m(i, j) = dist(gen);
            m(j, i) = m(i, j);
          }
        BilinearForm a(basis, m);
        Configuration eta = random_configuration(g, gen);
        auto functional = [&](const Configuration& c) {
          GridField zeta = fluctuation_field(c, rho_t);
          SpectralField ext = dft_forward(zeta);
          return a.apply(ext, ext);
        };
        double brute = generator_apply_bruteforce(eta, functional);
        double closed = generator_expansion_quadratic(a, rho_t, eta);
        EXPECT_NEAR(closed, brute, 1e-9 * std::max(1.0, std::abs(brute)))
            << "d=" << d << " n=" << n << " K=" << K << " rep=" << rep;
      }
    }
  }
}

TEST(GeneratorExpansion, RankOneQuadraticMatchesSquaredPairingExpansion) {
  // For A = phi phi^T the quadratic functional is <phi, extend(zeta)>^2, whose
  // expansion combines the linear collapse with the gradient-trace correction.
  Torus g(1, 4);
  std::mt19937 gen(37);
  SpectralField phi = random_hermitian_field(1, 4, gen);
  BilinearForm a = BilinearForm::rank_one(phi);
  GridField rho_t = mean_field(cosine_density(g, 0.5, 0.3), 0.05);
  for (int rep = 0; rep < 20; ++rep) {
    Configuration eta = random_configuration(g, gen);
    auto functional = [&](const Configuration& c) {
      GridField zeta = fluctuation_field(c, rho_t);
      double v = inner_product_discrete(project(phi, g.n), zeta);
      return v * v;
    };
    double brute = generator_apply_bruteforce(eta, functional);
    double closed = generator_expansion_quadratic(a, rho_t, eta);
    EXPECT_NEAR(closed, brute, 1e-9 * std::max(1.0, std::abs(brute))) << "rep=" << rep;
  }
}

TEST(GeneratorExpansion, LinearVanishesOnFlatProfiles) {
  // The discrete Laplacian of a constant is zero, so the collapsed form must
  // vanish for the constant test function regardless of the configuration.
  Torus g(1, 3);
  std::mt19937 gen(41);
  SpectralField constant(1, 3);
  constant.set_coeff(ModeIndex{0, 0}, {2.5, 0.0});
  for (int rep = 0; rep < 5; ++rep) {
    Configuration eta = random_configuration(g, gen);
    EXPECT_EQ(generator_expansion_linear(constant, eta), 0.0);
  }
}

}  // namespace
}  // namespace sseplab
