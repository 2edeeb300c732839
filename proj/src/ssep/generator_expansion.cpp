#include "sseplab/ssep/generator_expansion.hpp"

#include <cmath>

#include "sseplab/ssep/simulator.hpp"
#include "sseplab/torus/dft.hpp"
#include "sseplab/torus/operators.hpp"

namespace sseplab {

double generator_expansion_linear(const SpectralField& phi, const Configuration& eta) {
  const Torus& g = eta.torus();
  GridField lap = discrete_laplacian(project(phi, g.n));
  const double scale =
      2.0 * kPi * kPi * std::pow(static_cast<double>(g.len()), g.d * 0.5);
  return scale * inner_product_discrete(lap, eta.to_grid());
}

double generator_expansion_quadratic(const BilinearForm& a, const GridField& rho_t,
                                     const Configuration& eta) {
  const Torus& g = eta.torus();
  const double vol_half = std::pow(static_cast<double>(g.len()), g.d * 0.5);

  GridField zeta = fluctuation_field(eta, rho_t);
  SpectralField zeta_ext = dft_forward(zeta);
  Eigen::VectorXd s = a.basis().coordinates(zeta_ext);
  SpectralField psi = a.basis().field_from_coordinates(a.entries() * s);
  GridField lap = discrete_laplacian(project(psi, g.n));
  GridField eta_grid = eta.to_grid();
  const double linear_term =
      4.0 * kPi * kPi * vol_half * inner_product_discrete(lap, eta_grid);

  const double len2 = static_cast<double>(g.len()) * g.len();
  double trace_term = 0.0;
  for (int j = 0; j < g.d; ++j) {
    GridField tr = trace_of_form_gradient_discrete(a, g.n, j);
    GridField de = discrete_derivative(eta_grid, j);
    GridField de_sq(g);
    for (std::int64_t i = 0; i < g.sites(); ++i) de_sq[i] = de[i] * de[i];
    trace_term += inner_product_discrete(tr, de_sq);
  }
  trace_term *= 8.0 * kPi * kPi * kPi * kPi / len2;

  return linear_term + trace_term;
}

}  // namespace sseplab
