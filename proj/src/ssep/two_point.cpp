#include "sseplab/ssep/two_point.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "sseplab/ode/rk45.hpp"
#include "sseplab/torus/dft.hpp"
#include "sseplab/torus/operators.hpp"

namespace sseplab {

namespace {

/// Spectral evaluator of the mean field at arbitrary times: one
/// (sites x modes) matrix-vector product per query.
class DensityEvaluator {
 public:
  explicit DensityEvaluator(const GridField& rho0) : g_(rho0.torus()) {
    SpectralField c = dft_forward(rho0);
    const std::int64_t modes = c.size();
    phases_ = Eigen::MatrixXcd(g_.sites(), modes);
    coeff_ = Eigen::VectorXcd(modes);
    decay_ = Eigen::VectorXd(modes);
    for (std::int64_t m = 0; m < modes; ++m) {
      ModeIndex k = c.mode_at(m);
      coeff_(m) = c.coeffs()[static_cast<std::size_t>(m)];
      decay_(m) = 2.0 * kPi * kPi * eigenvalue_lambda(k, g_.n, g_.d);
      for (std::int64_t s = 0; s < g_.sites(); ++s) {
        auto x = g_.position(s);
        double arg = 0.0;
        for (int j = 0; j < g_.d; ++j) arg += k[j] * x[j];
        phases_(s, m) = std::complex<double>(std::cos(arg), std::sin(arg));
      }
    }
  }

  Eigen::VectorXd at(double t) const {
    Eigen::VectorXcd w =
        coeff_.array() * (-decay_.array() * t).exp().cast<std::complex<double>>();
    return (phases_ * w).real();
  }

 private:
  Torus g_;
  Eigen::MatrixXcd phases_;
  Eigen::VectorXcd coeff_;
  Eigen::VectorXd decay_;
};

}  // namespace

TwoPointTable exact_two_point(const GridField& rho0, double t, double rtol, double atol) {
  const Torus& g = rho0.torus();
  if (t < 0.0) throw std::invalid_argument("exact_two_point: negative time");
  const std::int64_t sites = g.sites();
  const double rate = 0.5 * static_cast<double>(g.len()) * g.len();

  std::vector<std::vector<std::int64_t>> nbr(static_cast<std::size_t>(sites));
  for (std::int64_t s = 0; s < sites; ++s) {
    auto& row = nbr[static_cast<std::size_t>(s)];
    row.reserve(static_cast<std::size_t>(2 * g.d));
    for (int j = 0; j < g.d; ++j) {
      row.push_back(g.neighbor(s, j, 1));
      row.push_back(g.neighbor(s, j, -1));
    }
  }

  DensityEvaluator density(rho0);
  std::vector<double> y(static_cast<std::size_t>(sites * sites), 0.0);
  auto idx = [sites](std::int64_t x, std::int64_t z) {
    return static_cast<std::size_t>(x * sites + z);
  };

  auto rhs = [&](double s, const std::vector<double>& v, std::vector<double>& dv) {
    Eigen::VectorXd u = density.at(s);
    std::fill(dv.begin(), dv.end(), 0.0);
    for (std::int64_t x = 0; x < sites; ++x) {
      for (std::int64_t z = 0; z < sites; ++z) {
        if (x == z) continue;
        double acc = 0.0;
        for (std::int64_t xn : nbr[static_cast<std::size_t>(x)]) {
          if (xn != z) {
            acc += v[idx(xn, z)] - v[idx(x, z)];
          } else {
            double du = u(x) - u(z);
            acc -= du * du;
          }
        }
        for (std::int64_t zn : nbr[static_cast<std::size_t>(z)])
          if (zn != x) acc += v[idx(x, zn)] - v[idx(x, z)];
        dv[idx(x, z)] = rate * acc;
      }
    }
  };

  if (t > 0.0) integrate_rk45(rhs, y, 0.0, t, rtol, atol);

  TwoPointTable table{g, t, Eigen::MatrixXd(sites, sites)};
  for (std::int64_t x = 0; x < sites; ++x)
    for (std::int64_t z = 0; z < sites; ++z)
      table.v(x, z) = (x == z) ? 0.0 : 0.5 * (y[idx(x, z)] + y[idx(z, x)]);
  return table;
}

double second_moment(const TwoPointTable& table, const GridField& rho_t,
                     const GridField& phi, const GridField& psi) {
  const Torus& g = table.g;
  if (!(rho_t.torus() == g) || !(phi.torus() == g) || !(psi.torus() == g))
    throw std::invalid_argument("second_moment: lattice mismatch");
  const std::int64_t sites = g.sites();
  double diag = 0.0;
  for (std::int64_t x = 0; x < sites; ++x)
    diag += rho_t[x] * (1.0 - rho_t[x]) * phi[x] * psi[x];
  double off = 0.0;
  for (std::int64_t x = 0; x < sites; ++x)
    for (std::int64_t z = 0; z < sites; ++z)
      if (x != z) off += phi[x] * psi[z] * table.v(x, z);
  return (diag + off) / static_cast<double>(sites);
}

Eigen::MatrixXd pairing_moment_matrix(const TwoPointTable& table, const GridField& rho_t,
                                      const RealModeBasis& basis) {
  const Torus& g = table.g;
  const int m = basis.size();
  std::vector<GridField> fields;
  fields.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    fields.push_back(
        GridField::sample(g, [&](const std::array<double, 2>& x) { return basis.evaluate(i, x); }));
  Eigen::MatrixXd out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double v = second_moment(table, rho_t, fields[static_cast<std::size_t>(i)],
                               fields[static_cast<std::size_t>(j)]);
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

}  // namespace sseplab
