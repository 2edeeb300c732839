#pragma once

#include "sseplab/harness/experiment.hpp"
#include "sseplab/obs/gaussian_expectation.hpp"

namespace sseplab {

/// Mean and standard error of the observable on the particle field at time t
/// over independent replicas. Replica r draws its own stream from
/// (master_seed, r); per-replica values are stored by index and reduced in
/// replica order with compensated summation, so the result is bit-identical
/// for every thread count.
SampleMean monte_carlo_expectation(const ExperimentConfig& cfg, int n);

/// Exact expectation for quadratic-in-field observables through the two-point
/// correlation ODE: quadratic forms, single-pairing polynomials of degree
/// <= 2, and products of two identity pairings. No sampling error.
double exact_expectation_second_moment(const ExperimentConfig& cfg, int n);

/// Exact expectation of any observable by full master-equation enumeration;
/// limited to lattices with at most 16 sites.
double exact_enumeration_expectation(const ExperimentConfig& cfg, int n);

/// Exact E f(<pr_n phi, zeta_0>_n) at time zero for single-pairing smooth
/// observables: the distribution of the pairing is convolved site by site on
/// a value grid fine enough that the linear mass splitting keeps the result
/// within `tolerance` (error <= sites * h^2 * sup|f''| / 8). Limited to 22
/// sites.
double exact_initial_expectation(const Observable& obs, const BandLimitedProfile& rho0,
                                 int n, double tolerance = 1e-9);

/// The comparison law for lattice size n: the matched Gaussian start (or a
/// deterministic zero field) propagated to time t on the band K = band_for(n).
GaussianLaw gaussian_law_for(const ExperimentConfig& cfg, int n);

/// Gaussian-side expectation, choosing the cheapest exact tier: closed form
/// for polynomials, one-dimensional quadrature for single-pairing smooth
/// observables, and Monte Carlo with >= 10x the particle replicas otherwise.
SampleMean gaussian_side_value(const ExperimentConfig& cfg, int n);

}  // namespace sseplab
