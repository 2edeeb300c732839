#include "sseplab/ssep/master_equation.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "sseplab/ssep/simulator.hpp"
#include "sseplab/torus/operators.hpp"

namespace sseplab {
namespace {

GridField cosine_density(Torus g, double base, double amp) {
  return GridField::sample(
      g, [&](const std::array<double, 2>& x) { return base + amp * std::cos(x[0]); });
}

TEST(ProductInitialDistribution, NormalizedAndMatchesBernoulliWeights) {
  Torus g(1, 1);
  GridField rho(g);
  rho[0] = 0.2;
  rho[1] = 0.5;
  rho[2] = 0.9;
  auto p = product_initial_distribution(rho);
  ASSERT_EQ(p.size(), 8u);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-14);
  // State 0b101 holds particles at sites 0 and 2.
  EXPECT_NEAR(p[5], 0.2 * 0.5 * 0.9, 1e-15);
  EXPECT_NEAR(p[0], 0.8 * 0.5 * 0.1, 1e-15);
}

TEST(ConfigurationFromState, RoundTripsBitPatterns) {
  Torus g(1, 2);
  for (std::uint64_t s = 0; s < 32; ++s) {
    Configuration eta = configuration_from_state(g, s);
    std::uint64_t back = 0;
    for (std::int64_t i = 0; i < g.sites(); ++i)
      if (eta.get(i)) back |= 1ULL << i;
    EXPECT_EQ(back, s);
  }
}

TEST(DenseRateMatrix, ColumnsSumToZeroAndSymmetric) {
  for (int n : {1, 2}) {
    Torus g(1, n);
    Eigen::MatrixXd q = dense_rate_matrix(g);
    Eigen::VectorXd colsum = q.colwise().sum();
    EXPECT_LT(colsum.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((q - q.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(EvolveMaster, PreservesTotalMass) {
  Torus g(1, 2);
  GridField rho = cosine_density(g, 0.5, 0.3);
  auto p = exact_master_distribution(rho, 0.25);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-10);
  for (double v : p) EXPECT_GE(v, -1e-12);
}

TEST(EvolveMaster, UniformHalfDensityIsInvariant) {
  Torus g(1, 1);
  GridField rho(g);
  for (std::int64_t i = 0; i < g.sites(); ++i) rho[i] = 0.5;
  auto p = exact_master_distribution(rho, 0.3);
  for (double v : p) EXPECT_NEAR(v, 1.0 / 8.0, 1e-10);
  GridField means = site_means(p, g);
  for (std::int64_t i = 0; i < g.sites(); ++i) EXPECT_NEAR(means[i], 0.5, 1e-10);
}

TEST(EvolveMaster, ParticleNumberSectorsArePreserved) {
  Torus g(1, 1);
  GridField rho(g);
  rho[0] = 0.3;
  rho[1] = 0.6;
  rho[2] = 0.9;
  auto p0 = product_initial_distribution(rho);
  auto pt = evolve_master_distribution(p0, g, 0.2);
  for (int count = 0; count <= 3; ++count) {
    double before = 0.0, after = 0.0;
    for (std::uint64_t s = 0; s < p0.size(); ++s) {
      if (std::popcount(s) != count) continue;
      before += p0[s];
      after += pt[s];
    }
    EXPECT_NEAR(after, before, 1e-10) << "sector " << count;
  }
}

TEST(EvolveMaster, MatchesDenseMatrixExponential) {
  for (int n : {1, 2}) {
    Torus g(1, n);
    GridField rho = cosine_density(g, 0.5, 0.25);
    const double t = 0.07;
    auto p = exact_master_distribution(rho, t);
    Eigen::MatrixXd q = dense_rate_matrix(g);
    auto p0 = product_initial_distribution(rho);
    Eigen::Map<const Eigen::VectorXd> p0v(p0.data(), static_cast<Eigen::Index>(p0.size()));
    Eigen::VectorXd expected = (q * t).exp() * p0v;
    for (std::size_t s = 0; s < p.size(); ++s)
      EXPECT_NEAR(p[s], expected(static_cast<Eigen::Index>(s)), 1e-9) << "state " << s;
  }
}

TEST(EvolveMaster, TwoDimensionalLatticeMatchesMatrixExponential) {
  Torus g(2, 1);
  GridField rho = cosine_density(g, 0.5, 0.2);
  const double t = 0.02;
  auto p = exact_master_distribution(rho, t);
  Eigen::MatrixXd q = dense_rate_matrix(g);
  auto p0 = product_initial_distribution(rho);
  Eigen::Map<const Eigen::VectorXd> p0v(p0.data(), static_cast<Eigen::Index>(p0.size()));
  Eigen::VectorXd expected = (q * t).exp() * p0v;
  double worst = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s)
    worst = std::max(worst, std::abs(p[s] - expected(static_cast<Eigen::Index>(s))));
  EXPECT_LT(worst, 1e-9);
}

TEST(EvolveMaster, SiteMeansFollowDiscreteHeatFlow) {
  for (int n : {1, 2}) {
    Torus g(1, n);
    GridField rho = cosine_density(g, 0.5, 0.3);
    for (double t : {0.01, 0.1, 0.4}) {
      GridField via_master = site_means(exact_master_distribution(rho, t), g);
      GridField via_heat = heat_propagate_discrete(rho, t);
      for (std::int64_t i = 0; i < g.sites(); ++i)
        EXPECT_NEAR(via_master[i], via_heat[i], 1e-8) << "n=" << n << " t=" << t;
    }
  }
}

TEST(MasterExpectation, ParticleCountMeanIsConserved) {
  Torus g(1, 1);
  GridField rho(g);
  rho[0] = 0.1;
  rho[1] = 0.5;
  rho[2] = 0.7;
  auto count = [](const Configuration& eta) {
    return static_cast<double>(eta.particle_count());
  };
  double before = master_expectation(product_initial_distribution(rho), g, count);
  double after = master_expectation(exact_master_distribution(rho, 0.35), g, count);
  EXPECT_NEAR(before, 0.1 + 0.5 + 0.7, 1e-12);
  EXPECT_NEAR(after, before, 1e-10);
}

TEST(EvolveMaster, RejectsOversizedStateSpace) {
  Torus g(1, 8);  // 17 sites
  GridField rho(g);
  EXPECT_THROW(product_initial_distribution(rho), std::invalid_argument);
}

}  // namespace
}  // namespace sseplab
