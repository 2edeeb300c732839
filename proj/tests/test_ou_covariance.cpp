#include "sseplab/ou/covariance.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "sseplab/torus/operators.hpp"

namespace sseplab {
namespace {

int basis_index(const RealModeBasis& basis, const ModeIndex& k, Trig trig) {
  for (int i = 0; i < basis.size(); ++i)
    if (basis.mode(i).k == k && basis.mode(i).trig == trig) return i;
  throw std::runtime_error("basis_index: mode not found");
}

/// 4096-point periodic trapezoid of <rho(1-rho) varsigma_i, varsigma_j>, d=1.
double initial_entry_quadrature(const BandLimitedProfile& rho, const RealModeBasis& basis,
                                int i, int j) {
  const int points = 4096;
  double acc = 0.0;
  for (int s = 0; s < points; ++s) {
    std::array<double, 2> x{kTwoPi * s / points, 0.0};
    double r = rho.evaluate(x);
    acc += r * (1.0 - r) * basis.evaluate(i, x) * basis.evaluate(j, x);
  }
  return acc / points;
}

TEST(BandLimitedProfile, RejectsOutOfRangeValues) {
  SpectralField f(1, 1);
  f.set_coeff(ModeIndex{0, 0}, {0.5, 0.0});
  f.set_coeff(ModeIndex{1, 0}, {0.35, 0.0});
  f.set_coeff(ModeIndex{-1, 0}, {0.35, 0.0});  // 0.5 + 0.7 cos x leaves [0,1]
  EXPECT_THROW(BandLimitedProfile{f}, std::invalid_argument);
}

TEST(BandLimitedProfile, BernoulliVarianceMatchesPointwiseProduct) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  SpectralField g = rho.bernoulli_variance();
  for (int s = 0; s < 64; ++s) {
    std::array<double, 2> x{kTwoPi * s / 64.0, 0.0};
    double r = rho.evaluate(x);
    EXPECT_NEAR(g.evaluate(x), r * (1.0 - r), 1e-13);
  }
}

TEST(InitialCovariance, ConstantHalfIsQuarterIdentity) {
  BandLimitedProfile rho = BandLimitedProfile::constant(1, 0.5);
  RealModeBasis basis(1, 3);
  Eigen::MatrixXd cov = initial_covariance_matrix(rho, basis);
  Eigen::MatrixXd expected = 0.25 * Eigen::MatrixXd::Identity(basis.size(), basis.size());
  EXPECT_LT((cov - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(InitialCovariance, DegenerateProfilesHaveZeroCovariance) {
  for (double c : {0.0, 1.0}) {
    BandLimitedProfile rho = BandLimitedProfile::constant(1, c);
    RealModeBasis basis(1, 2);
    EXPECT_LT(initial_covariance_matrix(rho, basis).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(InitialCovariance, CosineProfileMatchesQuadratureOracle) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  RealModeBasis basis(1, 2);
  Eigen::MatrixXd cov = initial_covariance_matrix(rho, basis);
  for (int i = 0; i < basis.size(); ++i)
    for (int j = 0; j < basis.size(); ++j)
      EXPECT_NEAR(cov(i, j), initial_entry_quadrature(rho, basis, i, j), 1e-10)
          << "entry (" << i << "," << j << ")";
  // <(1/4 - 0.09 cos^2 x) sqrt(2) cos x, sqrt(2) cos x> = 1/4 - 0.09*3/4
  int c1 = basis_index(basis, ModeIndex{1, 0}, Trig::cosine);
  EXPECT_NEAR(cov(c1, c1), 0.1825, 1e-13);
}

TEST(InitialCovariance, TwoDimensionalProfileMatchesQuadrature) {
  SpectralField f(2, 1);
  f.set_coeff(ModeIndex{0, 0}, {0.5, 0.0});
  f.set_coeff(ModeIndex{1, 0}, {0.1, 0.05});
  f.set_coeff(ModeIndex{-1, 0}, {0.1, -0.05});
  f.set_coeff(ModeIndex{0, 1}, {0.08, 0.0});
  f.set_coeff(ModeIndex{0, -1}, {0.08, 0.0});
  BandLimitedProfile rho{f};
  RealModeBasis basis(2, 1);
  Eigen::MatrixXd cov = initial_covariance_matrix(rho, basis);
  const int points = 128;
  for (int i = 0; i < basis.size(); ++i)
    for (int j = i; j < basis.size(); ++j) {
      double acc = 0.0;
      for (int s1 = 0; s1 < points; ++s1)
        for (int s2 = 0; s2 < points; ++s2) {
          std::array<double, 2> x{kTwoPi * s1 / points, kTwoPi * s2 / points};
          double r = rho.evaluate(x);
          acc += r * (1.0 - r) * basis.evaluate(i, x) * basis.evaluate(j, x);
        }
      EXPECT_NEAR(cov(i, j), acc / points / points, 1e-10)
          << "entry (" << i << "," << j << ")";
    }
}

TEST(CovarianceV, GradientKillsZeroMode) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.25);
  RealModeBasis basis(1, 2);
  Eigen::MatrixXd v = covariance_V(rho, 0.13, 2);
  int c0 = basis_index(basis, ModeIndex{0, 0}, Trig::constant);
  EXPECT_EQ(v.row(c0).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(v.col(c0).cwiseAbs().maxCoeff(), 0.0);
}

TEST(CovarianceV, ConstantDensityClosedForm) {
  const double c = 0.3;
  const double t = 0.08;
  BandLimitedProfile rho = BandLimitedProfile::constant(1, c);
  RealModeBasis basis(1, 3);
  Eigen::MatrixXd v = covariance_V(rho, t, 3);
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = 0; j < basis.size(); ++j) {
      if (i != j) {
        EXPECT_NEAR(v(i, j), 0.0, 1e-12);
        continue;
      }
      double k2 = basis.mode_norm_sq(i);
      double expected =
          k2 == 0.0 ? 0.0 : c * (1.0 - c) * (1.0 - std::exp(-4.0 * kPi * kPi * k2 * t));
      EXPECT_NEAR(v(i, i), expected, 1e-12) << "mode " << i;
    }
  }
  // Single-mode band with 10^4 panels reaches 1e-8; the K=3 band needs the
  // finer step because the trapezoid error grows with the decay rate squared.
  Eigen::MatrixXd v1 = covariance_V(rho, t, 1);
  Eigen::MatrixXd v1_quad =
      covariance_V_trapezoid(rho, t, 1, kNoisePrefactorFourPiSq, 10000);
  EXPECT_LT((v1 - v1_quad).cwiseAbs().maxCoeff(), 1e-8);
  Eigen::MatrixXd v_quad =
      covariance_V_trapezoid(rho, t, 3, kNoisePrefactorFourPiSq, 100000);
  EXPECT_LT((v - v_quad).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(CovarianceV, ResonantBranchFrozenValue) {
  // rho = 1/2 + 0.3 cos x: the weight of the k=0 noise mode contains a term
  // decaying at exactly the rate of the (1,-1) propagator pair, exercising the
  // t e^{-alpha t} branch:
  // V_t[sqrt2 cos, sqrt2 cos] = (1-E)/4 - 0.0225 * 4 pi^2 t E,  E = e^{-4 pi^2 t}.
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  RealModeBasis basis(1, 1);
  const double t = 0.1;
  Eigen::MatrixXd v = covariance_V(rho, t, 1);
  int c1 = basis_index(basis, ModeIndex{1, 0}, Trig::cosine);
  const double e = std::exp(-4.0 * kPi * kPi * t);
  const double expected = 0.25 * (1.0 - e) - 0.0225 * 4.0 * kPi * kPi * t * e;
  EXPECT_NEAR(v(c1, c1), expected, 1e-13);
  EXPECT_NEAR(v(c1, c1), 0.2434619023870279, 1e-12);
}

TEST(CovarianceV, MatchesAdaptiveQuadratureForGenericProfile) {
  SpectralField f(1, 2);
  f.set_coeff(ModeIndex{0, 0}, {0.5, 0.0});
  f.set_coeff(ModeIndex{1, 0}, {0.1, 0.0});
  f.set_coeff(ModeIndex{-1, 0}, {0.1, 0.0});
  f.set_coeff(ModeIndex{2, 0}, {0.0382, 0.0318});
  f.set_coeff(ModeIndex{-2, 0}, {0.0382, -0.0318});
  BandLimitedProfile rho{f};
  const double t = 0.07;
  Eigen::MatrixXd closed = covariance_V(rho, t, 3);
  Eigen::MatrixXd quad = covariance_V_adaptive(rho, t, 3, kNoisePrefactorFourPiSq);
  EXPECT_LT((closed - quad).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(CovarianceV, MatchesAdaptiveQuadratureInTwoDimensions) {
  SpectralField f(2, 1);
  f.set_coeff(ModeIndex{0, 0}, {0.5, 0.0});
  f.set_coeff(ModeIndex{1, 0}, {0.075, 0.0});
  f.set_coeff(ModeIndex{-1, 0}, {0.075, 0.0});
  f.set_coeff(ModeIndex{1, 1}, {0.05, 0.025});
  f.set_coeff(ModeIndex{-1, -1}, {0.05, -0.025});
  BandLimitedProfile rho{f};
  const double t = 0.05;
  Eigen::MatrixXd closed = covariance_V(rho, t, 2);
  Eigen::MatrixXd quad = covariance_V_adaptive(rho, t, 2, kNoisePrefactorFourPiSq);
  EXPECT_LT((closed - quad).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(CovarianceV, SymmetricPositiveSemidefiniteOnTimeGrid) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  for (double t : {0.0, 0.01, 0.1, 0.5, 1.0}) {
    Eigen::MatrixXd v = covariance_V(rho, t, 3);
    EXPECT_LT((v - v.transpose()).cwiseAbs().maxCoeff(), 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10) << "t=" << t;
  }
}

TEST(CovarianceV, WeightedHilbertSchmidtGrowsAtMostLinearly) {
  // |V_t[k,l]| <= kappa |k||l| (1/4) min(t, 1/alpha), alpha = 2 pi^2(|k|^2+|l|^2),
  // so each squared entry is bounded by kappa^2 |k||l| t / (64 pi^2); changing to
  // the real basis costs at most a factor 2 per entry. Summing against the
  // weights gives HS^2(t) <= t (kappa^2/(16 pi^2)) (sum_a w_a |k_a|)^2.
  const double weight_exponent = 1.0;
  const double kappa = kNoisePrefactorFourPiSq;
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  RealModeBasis basis(1, 3);
  double mode_sum = 0.0;
  for (int a = 0; a < basis.size(); ++a)
    mode_sum += std::pow(1.0 + basis.mode_norm_sq(a), -weight_exponent) *
                std::sqrt(basis.mode_norm_sq(a));
  const double c_bound = kappa * kappa / (16.0 * kPi * kPi) * mode_sum * mode_sum;
  for (double t : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
    Eigen::MatrixXd v = covariance_V(rho, t, 3);
    double hs_sq = 0.0;
    for (int a = 0; a < basis.size(); ++a)
      for (int b = 0; b < basis.size(); ++b)
        hs_sq += std::pow(1.0 + basis.mode_norm_sq(a), -weight_exponent) *
                 std::pow(1.0 + basis.mode_norm_sq(b), -weight_exponent) * v(a, b) *
                 v(a, b);
    EXPECT_LE(hs_sq, c_bound * t) << "t=" << t;
  }
}

TEST(CovarianceV, LipschitzInTheProfile) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  const double t = 0.1;
  Eigen::MatrixXd base = covariance_V(rho, t, 2);
  double prev = -1.0;
  for (double eps : {0.04, 0.02, 0.01, 0.005}) {
    BandLimitedProfile pert = BandLimitedProfile::cosine(1, 0.5, 0.3 + eps);
    double dist = (covariance_V(pert, t, 2) - base).norm();
    if (prev >= 0.0) EXPECT_LT(dist, 0.65 * prev) << "eps=" << eps;
    prev = dist;
  }
  EXPECT_LT(prev, 0.02);
}

TEST(MeanVector, PropagatesSingleModeWithHeatDecay) {
  RealModeBasis basis(1, 3);
  SpectralField zeta0 = SpectralField::single_mode(1, 3, ModeIndex{2, 0}, {0.3, -0.4});
  const double t = 0.07;
  Eigen::VectorXd m0 = mean_vector(zeta0, 0.0, basis);
  Eigen::VectorXd mt = mean_vector(zeta0, t, basis);
  Eigen::VectorXd expected = std::exp(-2.0 * kPi * kPi * 4.0 * t) * m0;
  EXPECT_LT((mt - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((m0 - basis.coordinates(zeta0)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LawAtTime, ZeroTimeReturnsInput) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.2);
  GaussianLaw law0 = initial_covariance(rho, 2);
  law0.mean(1) = 0.7;
  GaussianLaw law = law_at_time(rho, law0, 0.0);
  EXPECT_LT((law.cov - law0.cov).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((law.mean - law0.mean).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LawAtTime, DeterministicStartAccumulatesOnlyNoise) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.2);
  RealModeBasis basis(1, 2);
  GaussianLaw start{basis, Eigen::VectorXd::Zero(basis.size()),
                    Eigen::MatrixXd::Zero(basis.size(), basis.size()),
                    kNoisePrefactorFourPiSq};
  SpectralField zeta0 = SpectralField::single_mode(1, 2, ModeIndex{1, 0}, {0.5, 0.0});
  start.mean = basis.coordinates(zeta0);
  const double t = 0.09;
  GaussianLaw law = law_at_time(rho, start, t);
  EXPECT_LT((law.cov - covariance_V(rho, t, 2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((law.mean - mean_vector(zeta0, t, basis)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LawAtTime, BernoulliEquilibriumIsStationary) {
  const double c = 0.35;
  BandLimitedProfile rho = BandLimitedProfile::constant(1, c);
  GaussianLaw law0 = initial_covariance(rho, 3, kNoisePrefactorFourPiSq);
  Eigen::MatrixXd expected =
      c * (1.0 - c) * Eigen::MatrixXd::Identity(law0.basis.size(), law0.basis.size());
  for (double t : {0.01, 0.1, 1.0}) {
    GaussianLaw law = law_at_time(rho, law0, t);
    EXPECT_LT((law.cov - expected).cwiseAbs().maxCoeff(), 1e-10) << "t=" << t;
  }
}

TEST(LawAtTime, HalvedPrefactorDriftsTowardHalfVariance) {
  const double c = 0.5;
  BandLimitedProfile rho = BandLimitedProfile::constant(1, c);
  GaussianLaw law0 = initial_covariance(rho, 1, kNoisePrefactorTwoPiSq);
  GaussianLaw law = law_at_time(rho, law0, 1.0);
  RealModeBasis basis(1, 1);
  int c1 = basis_index(basis, ModeIndex{1, 0}, Trig::cosine);
  double gap = std::abs(law.cov(c1, c1) - c * (1.0 - c));
  EXPECT_GE(gap, 0.1 * c * (1.0 - c));
  EXPECT_NEAR(law.cov(c1, c1), 0.125, 1e-12);
}

TEST(LawAtTime, HeadlineVarianceFrozenValue) {
  // rho = 1/2 + 0.3 cos x, t = 0.1: variance of <sqrt2 cos x, zeta_t> equals
  // 0.1825 E + (1-E)/4 - 0.0225 * 4 pi^2 t E with E = e^{-4 pi^2 t}.
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  GaussianLaw law0 = initial_covariance(rho, 2);
  GaussianLaw law = law_at_time(rho, law0, 0.1);
  int c1 = basis_index(law.basis, ModeIndex{1, 0}, Trig::cosine);
  EXPECT_NEAR(law.cov(c1, c1), 0.24698347766828845, 1e-12);
}

TEST(CovarianceDerivative, ZeroDirectionGivesZero) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.2);
  BandLimitedProfile h = BandLimitedProfile::constant(1, 0.0);
  EXPECT_EQ(covariance_derivative_DV(rho, h, 0.1, 2).cwiseAbs().maxCoeff(), 0.0);
}

TEST(CovarianceDerivative, VanishesAtHalfDensityForConstantDirections) {
  BandLimitedProfile rho = BandLimitedProfile::constant(1, 0.5);
  BandLimitedProfile h = BandLimitedProfile::constant(1, 0.3);
  Eigen::MatrixXd dv = covariance_derivative_DV(rho, h, 0.2, 2);
  EXPECT_LT(dv.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CovarianceDerivative, MatchesCentralDifference) {
  const double t = 0.1;
  const int K = 2;
  const double eps = 1e-5;
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.2);
  BandLimitedProfile h = BandLimitedProfile::cosine(1, 0.5, 0.5);
  Eigen::MatrixXd dv = covariance_derivative_DV(rho, h, t, K);

  SpectralField up(1, 1), down(1, 1);
  for (std::int64_t i = 0; i < up.size(); ++i) {
    ModeIndex k = up.mode_at(i);
    std::complex<double> base = rho.field().coeff(k);
    std::complex<double> dir = h.field().coeff(k);
    up.set_coeff(k, base + eps * dir);
    down.set_coeff(k, base - eps * dir);
  }
  Eigen::MatrixXd fd = (covariance_V(BandLimitedProfile{up}, t, K) -
                        covariance_V(BandLimitedProfile{down}, t, K)) /
                       (2.0 * eps);
  double scale = std::max(1e-3, dv.cwiseAbs().maxCoeff());
  EXPECT_LT((dv - fd).cwiseAbs().maxCoeff() / scale, 1e-6);
}

TEST(CovarianceDerivative, LinearInTheDirection) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.2);
  BandLimitedProfile h1 = BandLimitedProfile::cosine(1, 0.5, 0.25);
  BandLimitedProfile h2 = BandLimitedProfile::cosine(1, 0.5, 0.2, ModeIndex{2, 0});
  // h1 + h2 - 1/2 is again a [0,1] profile; linearity determines its image.
  SpectralField sum(1, 2);
  for (std::int64_t i = 0; i < sum.size(); ++i) {
    ModeIndex k = sum.mode_at(i);
    std::complex<double> acc{0.0, 0.0};
    if (h1.field().in_box(k)) acc += h1.field().coeff(k);
    if (h2.field().in_box(k)) acc += h2.field().coeff(k);
    if (k == ModeIndex{0, 0}) acc -= 0.5;
    sum.set_coeff(k, acc);
  }
  BandLimitedProfile h3{sum};
  BandLimitedProfile half = BandLimitedProfile::constant(1, 0.5);
  const double t = 0.08;
  Eigen::MatrixXd lhs = covariance_derivative_DV(rho, h3, t, 2);
  Eigen::MatrixXd rhs = covariance_derivative_DV(rho, h1, t, 2) +
                        covariance_derivative_DV(rho, h2, t, 2) -
                        covariance_derivative_DV(rho, half, t, 2);
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-13);
}

}  // namespace
}  // namespace sseplab
