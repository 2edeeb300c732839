#include "sseplab/ou/covariance.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sseplab/torus/operators.hpp"

namespace sseplab {

namespace {

/// Fourier modes of a weight evolving along the heat flow, each a finite sum
/// sum_q c_q e^{-2 pi^2 q s} indexed by the integer decay class q.
struct ExpProfileSet {
  int band = 0;
  SpectralField box;  // mode indexing over {-band..band}^d
  std::vector<std::map<int, std::complex<double>>> terms;

  ExpProfileSet(int d, int b)
      : band(b), box(d, b), terms(static_cast<std::size_t>(box.size())) {}

  void add(const ModeIndex& m, int q, std::complex<double> c) {
    terms[static_cast<std::size_t>(box.index_of(m))][q] += c;
  }

  std::complex<double> value_at(const ModeIndex& m, double s) const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [q, c] : terms[static_cast<std::size_t>(box.index_of(m))])
      acc += c * std::exp(-2.0 * kPi * kPi * q * s);
    return acc;
  }
};

int norm_sq_int(const ModeIndex& k, int d) {
  int r = 0;
  for (int j = 0; j < d; ++j) r += k[j] * k[j];
  return r;
}

/// Modes of Phi(P_s rho) = P_s rho - (P_s rho)^2.
ExpProfileSet variance_flow_profile(const BandLimitedProfile& rho) {
  const SpectralField& a = rho.field();
  const int d = a.dim();
  ExpProfileSet prof(d, 2 * a.truncation());
  for (std::int64_t i = 0; i < a.size(); ++i) {
    ModeIndex m = a.mode_at(i);
    prof.add(m, norm_sq_int(m, d), a.coeffs()[static_cast<std::size_t>(i)]);
  }
  for (std::int64_t i = 0; i < a.size(); ++i) {
    ModeIndex k1 = a.mode_at(i);
    for (std::int64_t j = 0; j < a.size(); ++j) {
      ModeIndex k2 = a.mode_at(j);
      ModeIndex m{k1[0] + k2[0], d == 2 ? k1[1] + k2[1] : 0};
      std::complex<double> prod = a.coeffs()[static_cast<std::size_t>(i)] *
                                  a.coeffs()[static_cast<std::size_t>(j)];
      prof.add(m, norm_sq_int(k1, d) + norm_sq_int(k2, d), -prod);
    }
  }
  return prof;
}

/// Modes of Phi'(P_s rho) P_s h = (1 - 2 P_s rho) P_s h.
ExpProfileSet linearized_flow_profile(const BandLimitedProfile& rho,
                                      const BandLimitedProfile& h) {
  const SpectralField& a = rho.field();
  const SpectralField& b = h.field();
  if (a.dim() != b.dim())
    throw std::invalid_argument("covariance derivative: dimension mismatch");
  const int d = a.dim();
  ExpProfileSet prof(d, a.truncation() + b.truncation());
  for (std::int64_t i = 0; i < b.size(); ++i) {
    ModeIndex m = b.mode_at(i);
    prof.add(m, norm_sq_int(m, d), b.coeffs()[static_cast<std::size_t>(i)]);
  }
  for (std::int64_t i = 0; i < a.size(); ++i) {
    ModeIndex k1 = a.mode_at(i);
    for (std::int64_t j = 0; j < b.size(); ++j) {
      ModeIndex k2 = b.mode_at(j);
      ModeIndex m{k1[0] + k2[0], d == 2 ? k1[1] + k2[1] : 0};
      std::complex<double> prod = a.coeffs()[static_cast<std::size_t>(i)] *
                                  b.coeffs()[static_cast<std::size_t>(j)];
      prof.add(m, norm_sq_int(k1, d) + norm_sq_int(k2, d), -2.0 * prod);
    }
  }
  return prof;
}

/// int_0^t e^{-2 pi^2 p (t-s)} e^{-2 pi^2 q s} ds; integer classes make the
/// resonant branch exact.
double exp_integral(int p, int q, double t) {
  const double alpha = 2.0 * kPi * kPi * p;
  if (p == q) return t * std::exp(-alpha * t);
  const double beta = 2.0 * kPi * kPi * q;
  return (std::exp(-beta * t) - std::exp(-alpha * t)) / (alpha - beta);
}

double dot_modes(const ModeIndex& k, const ModeIndex& l, int d) {
  double r = 0.0;
  for (int j = 0; j < d; ++j) r += static_cast<double>(k[j]) * l[j];
  return r;
}

Eigen::MatrixXd realize_symmetric(const RealModeBasis& basis, const Eigen::MatrixXcd& w) {
  Eigen::MatrixXcd tmat = basis.real_from_complex();
  Eigen::MatrixXcd a = tmat.transpose() * w * tmat;
  Eigen::MatrixXd r = a.real();
  return 0.5 * (r + r.transpose());
}

/// Assembles prefactor * int_0^t e^{-2 pi^2 (|k|^2+|l|^2)(t-s)} (-k.l)
/// prof_{-(k+l)}(s) ds over the complex box, then changes to the real basis.
Eigen::MatrixXd assemble_closed_form(const RealModeBasis& basis, const ExpProfileSet& prof,
                                     double t, double prefactor) {
  const int d = basis.dim();
  SpectralField kbox(d, basis.truncation());
  const std::int64_t modes = kbox.size();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(modes, modes);
  for (std::int64_t i = 0; i < modes; ++i) {
    ModeIndex k = kbox.mode_at(i);
    for (std::int64_t j = 0; j < modes; ++j) {
      ModeIndex l = kbox.mode_at(j);
      double kl = dot_modes(k, l, d);
      if (kl == 0.0) continue;
      ModeIndex m{-(k[0] + l[0]), d == 2 ? -(k[1] + l[1]) : 0};
      if (!prof.box.in_box(m)) continue;
      const int p = norm_sq_int(k, d) + norm_sq_int(l, d);
      std::complex<double> acc{0.0, 0.0};
      for (const auto& [q, c] :
           prof.terms[static_cast<std::size_t>(prof.box.index_of(m))])
        acc += c * exp_integral(p, q, t);
      w(i, j) = prefactor * (-kl) * acc;
    }
  }
  return realize_symmetric(basis, w);
}

/// Integrand of the defining time integral at a fixed s, in the complex box.
Eigen::MatrixXcd integrand_at(const RealModeBasis& basis, const ExpProfileSet& prof,
                              double t, double s, double prefactor) {
  const int d = basis.dim();
  SpectralField kbox(d, basis.truncation());
  const std::int64_t modes = kbox.size();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(modes, modes);
  for (std::int64_t i = 0; i < modes; ++i) {
    ModeIndex k = kbox.mode_at(i);
    for (std::int64_t j = 0; j < modes; ++j) {
      ModeIndex l = kbox.mode_at(j);
      double kl = dot_modes(k, l, d);
      if (kl == 0.0) continue;
      ModeIndex m{-(k[0] + l[0]), d == 2 ? -(k[1] + l[1]) : 0};
      if (!prof.box.in_box(m)) continue;
      const int p = norm_sq_int(k, d) + norm_sq_int(l, d);
      w(i, j) = prefactor * (-kl) * std::exp(-2.0 * kPi * kPi * p * (t - s)) *
                prof.value_at(m, s);
    }
  }
  return w;
}

void require_nonnegative_time(double t) {
  if (t < 0.0) throw std::invalid_argument("covariance: negative time");
}

}  // namespace

Eigen::MatrixXd initial_covariance_matrix(const BandLimitedProfile& rho,
                                          const RealModeBasis& basis) {
  if (rho.dim() != basis.dim())
    throw std::invalid_argument("initial_covariance: dimension mismatch");
  SpectralField g = rho.bernoulli_variance();
  const int d = basis.dim();
  SpectralField kbox(d, basis.truncation());
  const std::int64_t modes = kbox.size();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(modes, modes);
  for (std::int64_t i = 0; i < modes; ++i) {
    ModeIndex k = kbox.mode_at(i);
    for (std::int64_t j = 0; j < modes; ++j) {
      ModeIndex l = kbox.mode_at(j);
      ModeIndex m{-(k[0] + l[0]), d == 2 ? -(k[1] + l[1]) : 0};
      if (g.in_box(m)) w(i, j) = g.coeff(m);
    }
  }
  return realize_symmetric(basis, w);
}

GaussianLaw initial_covariance(const BandLimitedProfile& rho, int K,
                               double noise_prefactor) {
  RealModeBasis basis(rho.dim(), K);
  Eigen::MatrixXd cov = initial_covariance_matrix(rho, basis);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(basis.size());
  return GaussianLaw{std::move(basis), std::move(mean), std::move(cov), noise_prefactor};
}

Eigen::MatrixXd covariance_V(const BandLimitedProfile& rho0, double t, int K,
                             double noise_prefactor) {
  require_nonnegative_time(t);
  RealModeBasis basis(rho0.dim(), K);
  return assemble_closed_form(basis, variance_flow_profile(rho0), t, noise_prefactor);
}

Eigen::MatrixXd covariance_V_trapezoid(const BandLimitedProfile& rho0, double t, int K,
                                       double noise_prefactor, int points) {
  require_nonnegative_time(t);
  if (points < 2) throw std::invalid_argument("covariance_V_trapezoid: too few points");
  RealModeBasis basis(rho0.dim(), K);
  ExpProfileSet prof = variance_flow_profile(rho0);
  const double h = t / points;
  Eigen::MatrixXcd acc = 0.5 * (integrand_at(basis, prof, t, 0.0, noise_prefactor) +
                                integrand_at(basis, prof, t, t, noise_prefactor));
  for (int i = 1; i < points; ++i)
    acc += integrand_at(basis, prof, t, i * h, noise_prefactor);
  return realize_symmetric(basis, h * acc);
}

Eigen::MatrixXd covariance_V_adaptive(const BandLimitedProfile& rho0, double t, int K,
                                      double noise_prefactor) {
  require_nonnegative_time(t);
  RealModeBasis basis(rho0.dim(), K);
  ExpProfileSet prof = variance_flow_profile(rho0);
  const int d = basis.dim();
  SpectralField kbox(d, K);
  const std::int64_t modes = kbox.size();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(modes, modes);
  if (t == 0.0) return realize_symmetric(basis, w);
  using quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  for (std::int64_t i = 0; i < modes; ++i) {
    ModeIndex k = kbox.mode_at(i);
    for (std::int64_t j = 0; j < modes; ++j) {
      ModeIndex l = kbox.mode_at(j);
      double kl = dot_modes(k, l, d);
      if (kl == 0.0) continue;
      ModeIndex m{-(k[0] + l[0]), d == 2 ? -(k[1] + l[1]) : 0};
      if (!prof.box.in_box(m)) continue;
      const int p = norm_sq_int(k, d) + norm_sq_int(l, d);
      auto real_part = [&](double s) {
        return (std::exp(-2.0 * kPi * kPi * p * (t - s)) * prof.value_at(m, s)).real();
      };
      auto imag_part = [&](double s) {
        return (std::exp(-2.0 * kPi * kPi * p * (t - s)) * prof.value_at(m, s)).imag();
      };
      double re = quad::integrate(real_part, 0.0, t, 12, 1e-13);
      double im = quad::integrate(imag_part, 0.0, t, 12, 1e-13);
      w(i, j) = noise_prefactor * (-kl) * std::complex<double>{re, im};
    }
  }
  return realize_symmetric(basis, w);
}

Eigen::MatrixXd covariance_derivative_DV(const BandLimitedProfile& rho0,
                                         const BandLimitedProfile& h, double t, int K,
                                         double noise_prefactor) {
  require_nonnegative_time(t);
  RealModeBasis basis(rho0.dim(), K);
  return assemble_closed_form(basis, linearized_flow_profile(rho0, h), t,
                              noise_prefactor);
}

Eigen::VectorXd mean_vector(const SpectralField& zeta0, double t,
                            const RealModeBasis& basis) {
  require_nonnegative_time(t);
  return basis.coordinates(heat_propagate_continuous(zeta0, t));
}

GaussianLaw law_at_time(const BandLimitedProfile& rho0, const GaussianLaw& zeta0_law,
                        double t) {
  require_nonnegative_time(t);
  const RealModeBasis& basis = zeta0_law.basis;
  Eigen::VectorXd decay(basis.size());
  for (int i = 0; i < basis.size(); ++i)
    decay(i) = std::exp(-2.0 * kPi * kPi * basis.mode_norm_sq(i) * t);
  Eigen::VectorXd mean = decay.asDiagonal() * zeta0_law.mean;
  Eigen::MatrixXd cov = decay.asDiagonal() * zeta0_law.cov * decay.asDiagonal();
  cov += covariance_V(rho0, t, basis.truncation(), zeta0_law.noise_prefactor);
  return GaussianLaw{basis, std::move(mean), std::move(cov), zeta0_law.noise_prefactor};
}

}  // namespace sseplab
