#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "sseplab/harness/curves.hpp"
#include "sseplab/harness/diagnostics.hpp"
#include "sseplab/harness/engines.hpp"
#include "sseplab/ou/covariance.hpp"
#include "sseplab/ssep/master_equation.hpp"
#include "sseplab/torus/operators.hpp"

namespace sseplab {
namespace {

constexpr double kTight = 1e-12;
constexpr double kOdeTolerance = 1e-8;
// E cos(Y) for Y ~ N(0, 1/4): exp(-1/8).
constexpr double kExpMinusOneEighth = 0.8824969025845955;

SpectralField sqrt2_cos_x(int K) {
  SpectralField f(1, K);
  f.set_coeff(ModeIndex{1, 0}, {std::sqrt(0.5), 0.0});
  f.set_coeff(ModeIndex{-1, 0}, {std::sqrt(0.5), 0.0});
  return f;
}

SpectralField constant_field(double c) {
  SpectralField f(1, 1);
  f.set_coeff(ModeIndex{0, 0}, {c, 0.0});
  return f;
}

ExperimentConfig headline_config(Engine engine) {
  ExperimentConfig cfg(BandLimitedProfile::cosine(1, 0.5, 0.3),
                       Observable::smooth(ScalarFunction::square(), {sqrt2_cos_x(3)}));
  cfg.n_list = {4, 8};
  cfg.t = 0.1;
  cfg.engine = engine;
  return cfg;
}

double fitted_slope(const std::vector<double>& ns, const std::vector<double>& errs) {
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

TEST(MonteCarloEngine, ThreadCountDoesNotChangeTheResult) {
  ExperimentConfig cfg = headline_config(Engine::kMonteCarlo);
  cfg.t = 0.05;
  cfg.replicas = 400;

  cfg.threads = 1;
  SampleMean serial = monte_carlo_expectation(cfg, 2);
  cfg.threads = 3;
  SampleMean three = monte_carlo_expectation(cfg, 2);
  cfg.threads = 16;
  SampleMean many = monte_carlo_expectation(cfg, 2);

  EXPECT_EQ(serial.value, three.value);
  EXPECT_EQ(serial.standard_error, three.standard_error);
  EXPECT_EQ(serial.value, many.value);
  EXPECT_EQ(serial.standard_error, many.standard_error);
  EXPECT_EQ(serial.replicas, 400);
}

TEST(MonteCarloEngine, ConstantObservableHasZeroSpread) {
  ExperimentConfig cfg(
      BandLimitedProfile::cosine(1, 0.5, 0.3),
      Observable::smooth(ScalarFunction::polynomial({0.25}), {sqrt2_cos_x(2)}));
  cfg.n_list = {2};
  cfg.t = 0.02;
  cfg.replicas = 50;
  cfg.engine = Engine::kMonteCarlo;

  SampleMean est = monte_carlo_expectation(cfg, 2);
  EXPECT_EQ(est.value, 0.25);
  EXPECT_EQ(est.standard_error, 0.0);
}

TEST(MonteCarloEngine, LinearPairingIsCenteredAtEquilibrium) {
  ExperimentConfig cfg(BandLimitedProfile::constant(1, 0.5),
                       Observable::linear(sqrt2_cos_x(2)));
  cfg.n_list = {3};
  cfg.t = 0.05;
  cfg.replicas = 4000;
  cfg.engine = Engine::kMonteCarlo;

  SampleMean est = monte_carlo_expectation(cfg, 3);
  ASSERT_GT(est.standard_error, 0.0);
  EXPECT_LE(std::abs(est.value), 5.0 * est.standard_error);
}

TEST(MonteCarloEngine, StandardErrorShrinksWithReplicas) {
  ExperimentConfig cfg = headline_config(Engine::kMonteCarlo);
  cfg.t = 0.05;

  cfg.replicas = 1000;
  SampleMean coarse = monte_carlo_expectation(cfg, 2);
  cfg.replicas = 16000;
  SampleMean fine = monte_carlo_expectation(cfg, 2);

  const double ratio = coarse.standard_error / fine.standard_error;
  EXPECT_GT(ratio, 2.5);
  EXPECT_LT(ratio, 6.5);
}

TEST(SecondMomentEngine, ConservedPairingStaysAtInitialVariance) {
  // The total-mass pairing is conserved by the dynamics, and at constant
  // density each site is an independent Bernoulli(1/2), so its second moment
  // is 1/4 at every time.
  ExperimentConfig cfg(
      BandLimitedProfile::constant(1, 0.5),
      Observable::smooth(ScalarFunction::square(), {constant_field(1.0)}));
  cfg.n_list = {3};
  cfg.t = 0.3;

  EXPECT_NEAR(exact_expectation_second_moment(cfg, 3), 0.25, kTight);
}

TEST(SecondMomentEngine, TimeZeroMatchesTheBernoulliSum) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  ExperimentConfig cfg(rho, Observable::smooth(ScalarFunction::square(), {sqrt2_cos_x(3)}));
  cfg.n_list = {5};
  cfg.t = 0.0;

  const int n = 5;
  Torus g(1, n);
  double expected = 0.0;
  for (std::int64_t i = 0; i < g.sites(); ++i) {
    const std::array<double, 2> x = g.position(i);
    const double p = rho.evaluate(x);
    const double phi = std::sqrt(2.0) * std::cos(x[0]);
    expected += p * (1.0 - p) * phi * phi;
  }
  expected /= static_cast<double>(g.sites());

  EXPECT_NEAR(exact_expectation_second_moment(cfg, n), expected, kTight);
}

TEST(SecondMomentEngine, SquareAndPairProductRoutesAgree) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  ExperimentConfig square_cfg(
      rho, Observable::smooth(ScalarFunction::square(), {sqrt2_cos_x(3)}));
  square_cfg.n_list = {4};
  square_cfg.t = 0.1;

  ExperimentConfig product_cfg(
      rho, Observable::smooth(ScalarFunction::identity(),
                              {sqrt2_cos_x(3), sqrt2_cos_x(3)}));
  product_cfg.n_list = {4};
  product_cfg.t = 0.1;

  EXPECT_NEAR(exact_expectation_second_moment(square_cfg, 4),
              exact_expectation_second_moment(product_cfg, 4), kTight);
}

TEST(SecondMomentEngine, MatchesEnumerationOnTinyLattices) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  ExperimentConfig cfg(rho, Observable::smooth(ScalarFunction::square(), {sqrt2_cos_x(2)}));
  cfg.n_list = {2};
  cfg.t = 0.07;

  const double via_ode = exact_expectation_second_moment(cfg, 2);
  cfg.engine = Engine::kExactEnumeration;
  const double via_master = exact_enumeration_expectation(cfg, 2);
  EXPECT_NEAR(via_ode, via_master, kOdeTolerance);
}

TEST(SecondMomentEngine, QuadraticFormMatchesEnumeration) {
  BilinearForm a(1, 1);
  a.entries() << 0.3, -0.2, 0.1, -0.2, 0.7, 0.4, 0.1, 0.4, -0.5;
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.25);
  ExperimentConfig cfg(rho, Observable::quadratic(a));
  cfg.n_list = {2};
  cfg.t = 0.06;

  const double via_ode = exact_expectation_second_moment(cfg, 2);
  const double via_master = exact_enumeration_expectation(cfg, 2);
  EXPECT_NEAR(via_ode, via_master, kOdeTolerance);
}

TEST(SecondMomentEngine, MatchesMonteCarloWithinNoise) {
  ExperimentConfig cfg = headline_config(Engine::kMonteCarlo);
  cfg.replicas = 20000;
  SampleMean mc = monte_carlo_expectation(cfg, 4);
  const double exact = exact_expectation_second_moment(cfg, 4);
  EXPECT_LE(std::abs(mc.value - exact), 5.0 * mc.standard_error);
}

TEST(SecondMomentEngine, RefusesOversizedLattices) {
  ExperimentConfig cfg = headline_config(Engine::kExactTwoPoint);
  cfg.n_list = {50};
  EXPECT_THROW(exact_expectation_second_moment(cfg, 50), std::invalid_argument);
}

TEST(ConvolutionEngine, IdentityPairingHasZeroMean) {
  Observable obs = Observable::smooth(ScalarFunction::identity(), {sqrt2_cos_x(3)});
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  EXPECT_NEAR(exact_initial_expectation(obs, rho, 6), 0.0, kTight);
}

TEST(ConvolutionEngine, SquareMatchesTheBernoulliVariance) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  Observable obs = Observable::smooth(ScalarFunction::square(), {sqrt2_cos_x(3)});

  const int n = 5;
  Torus g(1, n);
  double expected = 0.0;
  for (std::int64_t i = 0; i < g.sites(); ++i) {
    const std::array<double, 2> x = g.position(i);
    const double p = rho.evaluate(x);
    const double phi = std::sqrt(2.0) * std::cos(x[0]);
    expected += p * (1.0 - p) * phi * phi;
  }
  expected /= static_cast<double>(g.sites());

  EXPECT_NEAR(exact_initial_expectation(obs, rho, n), expected, 1e-8);
}

TEST(ConvolutionEngine, ThreeSiteBinomialIsAQuarter) {
  Observable obs = Observable::smooth(ScalarFunction::square(), {constant_field(1.0)});
  BandLimitedProfile rho = BandLimitedProfile::constant(1, 0.5);
  EXPECT_NEAR(exact_initial_expectation(obs, rho, 1), 0.25, 1e-8);
}

TEST(ConvolutionEngine, MatchesTheCharacteristicFunctionOracle) {
  // At rho = 1/2 each centered occupation is +-1/2 with equal probability, so
  // E cos(sum w_x eta_x) factors into prod_x cos(w_x / 2).
  const int n = 6;
  Observable obs = Observable::smooth(ScalarFunction::cosine(), {sqrt2_cos_x(3)});
  BandLimitedProfile rho = BandLimitedProfile::constant(1, 0.5);

  Torus g(1, n);
  double oracle = 1.0;
  for (std::int64_t i = 0; i < g.sites(); ++i) {
    const double w = std::sqrt(2.0) * std::cos(g.position(i)[0]) /
                     std::sqrt(static_cast<double>(g.sites()));
    oracle *= std::cos(w / 2.0);
  }

  EXPECT_NEAR(exact_initial_expectation(obs, rho, n), oracle, 5e-9);
}

TEST(ConvolutionEngine, MatchesMonteCarloAtTimeZero) {
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  Observable obs = Observable::smooth(ScalarFunction::cosine(), {sqrt2_cos_x(3)});
  ExperimentConfig cfg(rho, obs);
  cfg.n_list = {4};
  cfg.t = 0.0;
  cfg.replicas = 200000;
  cfg.engine = Engine::kMonteCarlo;

  SampleMean mc = monte_carlo_expectation(cfg, 4);
  const double exact = exact_initial_expectation(obs, rho, 4);
  EXPECT_LE(std::abs(mc.value - exact), 5.0 * mc.standard_error);
}

TEST(ErrorCurves, ExactEngineReportsZeroStderr) {
  ExperimentConfig cfg = headline_config(Engine::kExactTwoPoint);
  cfg.n_list = {4, 8, 16};
  ErrorTable table = error_curve(cfg);
  ASSERT_EQ(table.rows.size(), 3u);
  for (const ErrorRow& row : table.rows) {
    EXPECT_EQ(row.particle_stderr, 0.0);
    EXPECT_GT(row.abs_error, 0.0);
  }
  EXPECT_GT(table.rows[0].abs_error, table.rows[1].abs_error);
  EXPECT_GT(table.rows[1].abs_error, table.rows[2].abs_error);
}

TEST(ErrorCurves, SyntheticInjectionRecoversTheRate) {
  std::vector<int> ns = {4, 8, 16, 32};
  std::vector<double> particle, stderrs, gaussian;
  for (int n : ns) {
    gaussian.push_back(0.7);
    particle.push_back(0.7 + std::pow(static_cast<double>(n), -0.5));
    stderrs.push_back(0.0);
  }
  ErrorTable table = assemble_error_table(ns, particle, stderrs, gaussian);
  RateFit fit = fit_rate(table);
  EXPECT_NEAR(fit.slope, -0.5, kTight);
  EXPECT_NEAR(fit.intercept, 0.0, kTight);
  EXPECT_NEAR(fit.r_squared, 1.0, kTight);
  EXPECT_NEAR(fit.slope_stderr, 0.0, 1e-8);
}

TEST(ErrorCurves, ConstantErrorsFitAFlatLine) {
  std::vector<int> ns = {4, 8, 16};
  std::vector<double> particle(3, 1.25), stderrs(3, 0.0), gaussian(3, 1.0);
  RateFit fit = fit_rate(assemble_error_table(ns, particle, stderrs, gaussian));
  EXPECT_NEAR(fit.slope, 0.0, kTight);
  EXPECT_EQ(fit.r_squared, 1.0);
}

TEST(ErrorCurves, RateFitRejectsNoiseDominatedRows) {
  std::vector<int> ns = {4, 8, 16};
  std::vector<double> particle = {1.001, 1.001, 1.001};
  std::vector<double> stderrs = {0.001, 0.0, 0.0};
  std::vector<double> gaussian = {1.0, 1.0, 1.0};
  try {
    fit_rate(assemble_error_table(ns, particle, stderrs, gaussian));
    FAIL() << "expected a noise-gate rejection";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("noise-dominated"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("n=4"), std::string::npos);
  }
}

TEST(ErrorCurves, RateFitNeedsThreeRows) {
  std::vector<int> ns = {4, 8};
  std::vector<double> particle = {1.1, 1.05}, stderrs = {0.0, 0.0}, gaussian = {1.0, 1.0};
  EXPECT_THROW(fit_rate(assemble_error_table(ns, particle, stderrs, gaussian)),
               std::invalid_argument);
}

TEST(ErrorCurves, CsvHasHeaderAndSeventeenDigitValues) {
  std::vector<int> ns = {4, 8, 16};
  std::vector<double> particle = {1.0 / 3.0, 0.25, 0.2};
  std::vector<double> stderrs = {0.0, 0.0, 0.0};
  std::vector<double> gaussian = {0.3, 0.2, 0.15};
  std::string csv = error_table_csv(assemble_error_table(ns, particle, stderrs, gaussian),
                                    0.1, "smooth:square:1", "exact_two_point");
  EXPECT_NE(csv.find("n,t,observable,engine,particle_value,particle_stderr,"
                     "gaussian_value,abs_error\n"),
            std::string::npos);
  EXPECT_NE(csv.find("0.33333333333333331"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(BerryEsseen, SquareObservableIsExactAtEquilibrium) {
  ExperimentConfig cfg(BandLimitedProfile::constant(1, 0.35),
                       Observable::smooth(ScalarFunction::square(), {sqrt2_cos_x(1)}));
  cfg.n_list = {2, 4, 6};
  BerryEsseenResult result = berry_esseen_curve(cfg);
  ASSERT_EQ(result.table.rows.size(), 3u);
  for (const ErrorRow& row : result.table.rows) {
    EXPECT_NEAR(row.particle_value, 0.35 * 0.65, 1e-8);
    EXPECT_NEAR(row.gaussian_value, 0.35 * 0.65, kTight);
    EXPECT_LT(row.abs_error, 1e-8);
  }
}

TEST(BerryEsseen, CosineObservableDecaysAtTheCltRate) {
  ExperimentConfig cfg(BandLimitedProfile::constant(1, 0.5),
                       Observable::smooth(ScalarFunction::cosine(), {sqrt2_cos_x(1)}));
  cfg.n_list = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  BerryEsseenResult result = berry_esseen_curve(cfg);
  ASSERT_EQ(result.table.rows.size(), 9u);
  for (const ErrorRow& row : result.table.rows) {
    EXPECT_NEAR(row.gaussian_value, kExpMinusOneEighth, 1e-10);
  }
  for (std::size_t i = 1; i < result.table.rows.size(); ++i) {
    EXPECT_LT(result.table.rows[i].abs_error, result.table.rows[i - 1].abs_error);
  }
  ASSERT_TRUE(result.fit.has_value());
  EXPECT_LE(result.fit->slope, -0.45);
}

TEST(ZetaTauZeta, NeighborCorrelationDecaysLikeOneOverN) {
  // With rho_0 = 1/2 + 0.3 cos x the neighbor correlation profile carries the
  // even modes of (grad rho)^2, so the test function must live there too.
  BandLimitedProfile rho = BandLimitedProfile::cosine(1, 0.5, 0.3);
  SpectralField f(1, 2);
  f.set_coeff(ModeIndex{2, 0}, {std::sqrt(0.5), 0.0});
  f.set_coeff(ModeIndex{-2, 0}, {std::sqrt(0.5), 0.0});
  std::vector<double> ns, errs;
  for (int n : {4, 8, 12, 16, 20}) {
    const double value = std::abs(zeta_tau_zeta_statistic(rho, f, 0.1, n, 0));
    ASSERT_GT(value, 0.0);
    ns.push_back(static_cast<double>(n));
    errs.push_back(value);
  }
  for (std::size_t i = 1; i < errs.size(); ++i) EXPECT_LT(errs[i], errs[i - 1]);
  EXPECT_LE(fitted_slope(ns, errs), -0.8);
}

TEST(Stationarity, MatchedPrefactorKeepsEquilibriumInvariant) {
  EXPECT_LE(stationarity_gap(0.5, 0.1, 32, kNoisePrefactorFourPiSq), 2e-3);
}

TEST(Stationarity, HalvedPrefactorDriftsTheVariance) {
  EXPECT_GT(stationarity_gap(0.5, 0.1, 32, kNoisePrefactorTwoPiSq), 0.1 * 0.25);
}

TEST(GaussianSide, DeterministicZeroStartIsPureNoise) {
  ExperimentConfig cfg = headline_config(Engine::kExactTwoPoint);
  cfg.zeta0_mode = InitialFieldMode::kDeterministicZero;

  GaussianLaw law = gaussian_law_for(cfg, 4);
  Eigen::MatrixXd noise = covariance_V(cfg.rho0, cfg.t, cfg.band_for(4));
  ASSERT_EQ(law.cov.rows(), noise.rows());
  EXPECT_LT((law.cov - noise).cwiseAbs().maxCoeff(), kTight);
  EXPECT_LT(law.mean.cwiseAbs().maxCoeff(), kTight);
}

TEST(GaussianSide, LinearObservableHasExactZeroMean) {
  ExperimentConfig cfg(BandLimitedProfile::cosine(1, 0.5, 0.3),
                       Observable::linear(sqrt2_cos_x(2)));
  cfg.n_list = {4};
  SampleMean value = gaussian_side_value(cfg, 4);
  EXPECT_EQ(value.value, 0.0);
  EXPECT_EQ(value.standard_error, 0.0);
}

TEST(Labels, EnginesAndObservablesPrintTheirNames) {
  EXPECT_STREQ(engine_name(Engine::kExactTwoPoint), "exact_two_point");
  EXPECT_STREQ(engine_name(Engine::kMonteCarlo), "monte_carlo");
  Observable obs = Observable::smooth(ScalarFunction::cosine(), {sqrt2_cos_x(1)});
  EXPECT_EQ(observable_label(obs), "smooth:cos:1");
  EXPECT_EQ(observable_label(Observable::linear(sqrt2_cos_x(1))), "linear");
}

TEST(Diagnostics, HealthySuitePasses) {
  ExperimentConfig cfg = headline_config(Engine::kExactTwoPoint);
  cfg.n_list = {4, 8, 16};
  DiagnosticsReport report = diagnostics_suite(cfg);
  for (const DiagnosticCheck& check : report.checks) {
    EXPECT_TRUE(check.pass) << check.name << ": " << check.value << " vs " << check.bound;
    EXPECT_FALSE(check.skipped) << check.name;
  }
  EXPECT_TRUE(report.all_pass());
  EXPECT_NE(diagnostics_text(report).find("[PASS] stationarity"), std::string::npos);
}

TEST(Diagnostics, HalvedNoisePrefactorTripsTheStationarityCheck) {
  ExperimentConfig cfg = headline_config(Engine::kExactTwoPoint);
  cfg.n_list = {4, 8, 16};
  cfg.noise_prefactor = kNoisePrefactorTwoPiSq;
  DiagnosticsReport report = diagnostics_suite(cfg);
  EXPECT_FALSE(report.all_pass());
  bool found = false;
  for (const DiagnosticCheck& check : report.checks) {
    if (check.name == "stationarity") {
      found = true;
      EXPECT_FALSE(check.pass);
    } else {
      EXPECT_TRUE(check.pass) << check.name;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Diagnostics, ShortLadderSkipsTheRateFits) {
  ExperimentConfig cfg = headline_config(Engine::kExactTwoPoint);
  cfg.n_list = {8};
  DiagnosticsReport report = diagnostics_suite(cfg);
  int skipped = 0;
  for (const DiagnosticCheck& check : report.checks) {
    if (check.skipped) {
      ++skipped;
      EXPECT_TRUE(check.name == "interpolation_rate" || check.name == "laplacian_rate");
    }
  }
  EXPECT_EQ(skipped, 2);
  EXPECT_TRUE(report.all_pass());
}

TEST(Validation, ConfigRejectsBadLaddersAndScalars) {
  ExperimentConfig cfg = headline_config(Engine::kExactTwoPoint);
  cfg.n_list = {};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.n_list = {8, 4};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.n_list = {4, 8};
  cfg.t = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.t = 0.1;
  cfg.noise_prefactor = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace sseplab
