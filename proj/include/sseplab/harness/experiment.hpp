#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sseplab/obs/observable.hpp"
#include "sseplab/ou/band_limited_profile.hpp"
#include "sseplab/ou/gaussian_law.hpp"

namespace sseplab {

enum class Engine { kMonteCarlo, kExactTwoPoint, kExactEnumeration };
enum class InitialFieldMode { kMatchedGaussian, kDeterministicZero };

const char* engine_name(Engine e);
std::string observable_label(const Observable& obs);

/// One experiment: a density profile, an observable, and the ladder of
/// lattice sizes to compare particle and Gaussian expectations on.
struct ExperimentConfig {
  BandLimitedProfile rho0;
  Observable observable;
  int dim;
  std::vector<int> n_list;
  double t = 0.1;
  InitialFieldMode zeta0_mode = InitialFieldMode::kMatchedGaussian;
  std::int64_t replicas = 10000;
  std::uint64_t master_seed = 1;
  double noise_prefactor = kNoisePrefactorFourPiSq;
  /// 0 keeps the Gaussian side on the particle side's resolvable band
  /// (K = n per row); a positive value caps the band at min(n, truncation).
  int truncation = 0;
  Engine engine = Engine::kExactTwoPoint;
  int threads = 1;

  ExperimentConfig(BandLimitedProfile rho, Observable obs)
      : rho0(std::move(rho)), observable(std::move(obs)), dim(rho0.field().dim()) {}

  /// Throws invalid_argument on inconsistent dimensions, a non-increasing
  /// n ladder, or nonsensical scalar settings.
  void validate() const;

  int band_for(int n) const;
};

struct ErrorRow {
  int n = 0;
  double particle_value = 0.0;
  double particle_stderr = 0.0;
  double gaussian_value = 0.0;
  double abs_error = 0.0;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;
};

/// Builds rows with abs_error = |particle - gaussian|; the three value arrays
/// must match the ladder length. Also the plumbing hook for synthetic
/// injection tests.
ErrorTable assemble_error_table(const std::vector<int>& n_list,
                                const std::vector<double>& particle_values,
                                const std::vector<double>& particle_stderrs,
                                const std::vector<double>& gaussian_values);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of log(abs_error) on log(n). Requires at least
/// three rows, every abs_error positive, and every abs_error above ten times
/// its standard error; offending rows are listed in the thrown message.
RateFit fit_rate(const ErrorTable& table);

/// CSV with header n,t,observable,engine,particle_value,particle_stderr,
/// gaussian_value,abs_error; '.' decimal, '\n' endings, 17 significant
/// digits.
std::string error_table_csv(const ErrorTable& table, double t,
                            const std::string& observable, const std::string& engine);

/// Locale-independent "%.17g" rendering shared by every CSV writer.
std::string format_float17(double v);

}  // namespace sseplab
