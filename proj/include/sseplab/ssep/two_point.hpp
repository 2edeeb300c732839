#pragma once

#include <Eigen/Dense>

#include "sseplab/torus/grid_field.hpp"
#include "sseplab/torus/real_basis.hpp"

namespace sseplab {

/// Centered two-point function V_t(x,y) = E eta_t(x) eta_t(y) - rho_t(x) rho_t(y)
/// for x != y, with the diagonal held at zero. Stored without any volume factor.
struct TwoPointTable {
  Torus g{1, 1};
  double t = 0.0;
  Eigen::MatrixXd v;
};

/// Integrates the closed evolution of V_t from the product initial law
/// (V_0 = 0): off-diagonal entries relax under the two-particle exclusion walk
/// while adjacent pairs are driven by -(rate) (rho_t(x) - rho_t(y))^2.
TwoPointTable exact_two_point(const GridField& rho0, double t, double rtol = 1e-10,
                              double atol = 1e-12);

/// E <zeta_t, phi>_n <zeta_t, psi>_n for the fluctuation field
/// zeta_t = (2n+1)^{d/2} (eta_t - rho_t):
/// (2n+1)^{-d} [ sum_x rho_t (1-rho_t) phi psi + sum_{x != y} phi(x) psi(y) V(x,y) ].
double second_moment(const TwoPointTable& table, const GridField& rho_t,
                     const GridField& phi, const GridField& psi);

/// Matrix of second moments over the lattice restrictions of a real
/// trigonometric basis.
Eigen::MatrixXd pairing_moment_matrix(const TwoPointTable& table, const GridField& rho_t,
                                      const RealModeBasis& basis);

}  // namespace sseplab
