#pragma once

#include "sseplab/torus/grid_field.hpp"
#include "sseplab/torus/spectral_field.hpp"

namespace sseplab {

/// Forward transform: c_k = (2n+1)^{-d} sum_s f(x_s) e^{-i k.x_s} over the box
/// {-n..n}^d. Exact trigonometric interpolation coefficients of the lattice.
SpectralField dft_forward(const GridField& f);

/// Evaluates the modes of `c` with |k_j| <= min(K, n) on the lattice of size
/// 2n+1 per axis. Modes outside the resolvable band are dropped, not aliased.
GridField dft_inverse(const SpectralField& c, int n);

}  // namespace sseplab
