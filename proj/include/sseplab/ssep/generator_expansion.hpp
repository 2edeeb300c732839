#pragma once

#include "sseplab/ssep/configuration.hpp"
#include "sseplab/torus/bilinear_form.hpp"
#include "sseplab/torus/grid_field.hpp"
#include "sseplab/torus/spectral_field.hpp"

namespace sseplab {

/// Exact action of the particle generator on a functional of the configuration
/// by enumerating every edge swap:
/// (G F)(eta) = ((2n+1)^2/2) sum_edges [F(eta^swap) - F(eta)].
template <class F>
double generator_apply_bruteforce(const Configuration& eta, F&& f) {
  const Torus& g = eta.torus();
  const double rate = 0.5 * static_cast<double>(g.len()) * g.len();
  const double base = f(eta);
  Configuration work = eta;
  double acc = 0.0;
  double comp = 0.0;
  for (std::int64_t s = 0; s < g.sites(); ++s) {
    for (int j = 0; j < g.d; ++j) {
      std::int64_t b = g.neighbor(s, j, 1);
      if (work.get(s) == work.get(b)) continue;
      work.swap_sites(s, b);
      double term = f(work) - base;
      work.swap_sites(s, b);
      double y = term - comp;
      double next = acc + y;
      comp = (next - acc) - y;
      acc = next;
    }
  }
  return rate * acc;
}

/// Closed form of G applied to eta -> <phi, extend(zeta(eta))>, which the swap
/// algebra collapses to a discrete-Laplacian pairing:
/// 2 pi^2 (2n+1)^{d/2} <Laplacian_n project_n phi, eta>_n.
double generator_expansion_linear(const SpectralField& phi, const Configuration& eta);

/// Closed form of G applied to eta -> A[extend(zeta), extend(zeta)] with
/// zeta = (2n+1)^{d/2} (eta - rho_t): a linear pairing against the form
/// applied to the current field plus a gradient-trace term quadratic in the
/// discrete derivatives of eta. The collapse is exact (no remainder).
double generator_expansion_quadratic(const BilinearForm& a, const GridField& rho_t,
                                     const Configuration& eta);

}  // namespace sseplab
