#pragma once

#include <cstdint>
#include <optional>

#include "sseplab/obs/observable.hpp"
#include "sseplab/ou/gaussian_law.hpp"
#include "sseplab/ssep/rng.hpp"

namespace sseplab {

struct SampleMean {
  double value = 0.0;
  double standard_error = 0.0;
  std::int64_t replicas = 0;
};

/// Exact expectation of the observable under the Gaussian law via moment
/// recursion on the mean and covariance (valid through total degree four in
/// the field). Returns nullopt when the observable is not polynomial of
/// degree <= 4 — callers fall back to quadrature or Monte Carlo.
std::optional<double> gaussian_expectation_closed_form(const Observable& obs,
                                                       const GaussianLaw& law);

/// Deterministic expectation for single-pairing smooth observables with any
/// catalog function: one-dimensional adaptive quadrature of f against the
/// normal density of the pairing. Throws for kinds it does not cover.
double gaussian_expectation_quadrature(const Observable& obs, const GaussianLaw& law,
                                       double tolerance = 1e-13);

/// Plain Monte Carlo over independent samples of the law; needs >= 2
/// replicas so the standard error is defined.
SampleMean gaussian_expectation_monte_carlo(const Observable& obs, const GaussianLaw& law,
                                            std::int64_t replicas, Rng& rng);

}  // namespace sseplab
