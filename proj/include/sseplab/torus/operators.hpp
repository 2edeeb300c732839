#pragma once

#include <complex>

#include "sseplab/torus/bilinear_form.hpp"
#include "sseplab/torus/grid_field.hpp"
#include "sseplab/torus/spectral_field.hpp"

namespace sseplab {

/// Trigonometric interpolation of lattice data (exact on the lattice).
SpectralField extend(const GridField& f);

/// Band projection of a continuum field onto the lattice of size 2n+1.
GridField project(const SpectralField& g, int n);

/// Forward difference quotient ((2n+1)/(2*pi)) (f(x+e_j) - f(x)).
GridField discrete_derivative(const GridField& f, int axis);

/// ((2n+1)^2/(4*pi^2)) sum_j (f(x+e_j) + f(x-e_j) - 2 f(x)).
GridField discrete_laplacian(const GridField& f);

/// Cyclic shift tau_j: (shift f)(x) = f(x + e_j).
GridField shift(const GridField& f, int axis);

/// Eigenvalue of -discrete_laplacian on mode k:
/// ((2n+1)^2/(2*pi^2)) sum_j (1 - cos(2*pi*k_j/(2n+1))). Requires |k_j| <= n.
double eigenvalue_lambda(const ModeIndex& k, int n, int d);

/// Eigenvalue of discrete_derivative along `axis` on mode k:
/// ((2n+1)/(2*pi)) (e^{i 2*pi*k_axis/(2n+1)} - 1). Requires |k_axis| <= n.
std::complex<double> eigenvalue_mu(const ModeIndex& k, int axis, int n);

/// Lattice heat semigroup: mode k decays by exp(-2*pi^2*lambda_k^n*t), t >= 0.
GridField heat_propagate_discrete(const GridField& f, double t);

/// Continuum heat semigroup: mode k decays by exp(-2*pi^2*|k|^2*t), t >= 0.
SpectralField heat_propagate_continuous(const SpectralField& f, double t);

double sobolev_norm(const SpectralField& f, double J);

/// Trace field of a bilinear form, Tr A(x) = A[delta_x, delta_x]:
/// mode-l coefficient sum_k A[varsigma_{k-l}, varsigma_{-k}], band 2K.
SpectralField trace_of_form(const BilinearForm& a);

/// Lattice trace of the form after band projection and one discrete gradient
/// on each slot: sum_{l,l~ in {-n..n}^d} mu_{l,axis} mu_{l~,axis}
/// A[varsigma_{-l}, varsigma_{-l~}] varsigma_{l+l~}(x).
GridField trace_of_form_gradient_discrete(const BilinearForm& a, int n, int axis);

}  // namespace sseplab
