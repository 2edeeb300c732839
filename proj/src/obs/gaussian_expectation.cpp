#include "sseplab/obs/gaussian_expectation.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace sseplab {
namespace {

constexpr int kMaxWickDegree = 4;
// 12 standard deviations: the discarded Gaussian tail mass is ~2e-33, far
// below the quadrature tolerance even for quartic integrands.
constexpr double kQuadratureRadius = 12.0;
constexpr double kInvSqrtTwoPi = 0.3989422804014327;

/// E[prod_i s_{idx[i]}] for jointly Gaussian s via the moment recursion
/// E[s_u g(s)] = mu_u E[g] + sum_j cov(u,j) E[d_j g].
double gaussian_moment(std::vector<int> idx, const Eigen::VectorXd& mu,
                       const Eigen::MatrixXd& cov) {
  if (idx.empty()) return 1.0;
  const int u = idx.back();
  idx.pop_back();
  double acc = mu[u] * gaussian_moment(idx, mu, cov);
  for (std::size_t p = 0; p < idx.size(); ++p) {
    std::vector<int> rest;
    rest.reserve(idx.size() - 1);
    for (std::size_t q = 0; q < idx.size(); ++q) {
      if (q != p) rest.push_back(idx[q]);
    }
    acc += cov(u, idx[p]) * gaussian_moment(std::move(rest), mu, cov);
  }
  return acc;
}

/// Monomial expansion of prod_i f(y_i) keyed by the exponent vector; nullopt
/// when a surviving term exceeds the Wick degree cap.
std::optional<std::map<std::vector<int>, double>> expand_product(const ScalarFunction& f,
                                                                 int factors) {
  if (!f.is_polynomial()) return std::nullopt;
  const std::vector<double>& c = f.coefficients();
  std::map<std::vector<int>, double> terms;
  terms[std::vector<int>(static_cast<std::size_t>(factors), 0)] = 1.0;
  for (int i = 0; i < factors; ++i) {
    std::map<std::vector<int>, double> next;
    for (const auto& [expo, coeff] : terms) {
      for (int p = 0; p < static_cast<int>(c.size()); ++p) {
        if (c[static_cast<std::size_t>(p)] == 0.0) continue;
        std::vector<int> e2 = expo;
        e2[static_cast<std::size_t>(i)] += p;
        int total = 0;
        for (int e : e2) total += e;
        if (total > kMaxWickDegree) return std::nullopt;
        next[e2] += coeff * c[static_cast<std::size_t>(p)];
      }
    }
    terms = std::move(next);
  }
  return terms;
}

/// Pairing mean and covariance of the fields under the law: mu_i = r_i.mean,
/// cov_ij = r_i.C.r_j with r_i the law-basis coordinates of phi_i.
void pairing_law(const std::vector<SpectralField>& phis, const GaussianLaw& law,
                 Eigen::VectorXd& mu, Eigen::MatrixXd& cov) {
  const int m = static_cast<int>(phis.size());
  Eigen::MatrixXd r(law.basis.size(), m);
  for (int i = 0; i < m; ++i) {
    r.col(i) = law.basis.coordinates(phis[static_cast<std::size_t>(i)]);
  }
  mu = r.transpose() * law.mean;
  cov = r.transpose() * law.cov * r;
}

/// Index of each mode of `from` inside `to`, or -1 when outside its band.
std::vector<int> basis_embedding(const RealModeBasis& from, const RealModeBasis& to) {
  std::map<std::tuple<int, int, int>, int> lookup;
  for (int i = 0; i < to.size(); ++i) {
    const RealMode& m = to.mode(i);
    lookup[{m.k[0], m.k[1], static_cast<int>(m.trig)}] = i;
  }
  std::vector<int> out(static_cast<std::size_t>(from.size()), -1);
  for (int i = 0; i < from.size(); ++i) {
    const RealMode& m = from.mode(i);
    auto it = lookup.find({m.k[0], m.k[1], static_cast<int>(m.trig)});
    if (it != lookup.end()) out[static_cast<std::size_t>(i)] = it->second;
  }
  return out;
}

double quadratic_expectation(const BilinearForm& a, const GaussianLaw& law) {
  std::vector<int> where = basis_embedding(a.basis(), law.basis);
  double acc = 0.0;
  for (int i = 0; i < a.basis().size(); ++i) {
    const int li = where[static_cast<std::size_t>(i)];
    if (li < 0) continue;
    for (int j = 0; j < a.basis().size(); ++j) {
      const int lj = where[static_cast<std::size_t>(j)];
      if (lj < 0) continue;
      acc += a.entries()(i, j) * (law.cov(li, lj) + law.mean[li] * law.mean[lj]);
    }
  }
  return acc;
}

void check_law(const Observable& obs, const GaussianLaw& law) {
  if (obs.dim() != law.basis.dim()) {
    throw std::invalid_argument("gaussian expectation: dimension mismatch");
  }
  if (law.mean.size() != law.basis.size() || law.cov.rows() != law.basis.size() ||
      law.cov.cols() != law.basis.size()) {
    throw std::invalid_argument("gaussian expectation: law shape mismatch");
  }
}

}  // namespace

std::optional<double> gaussian_expectation_closed_form(const Observable& obs,
                                                       const GaussianLaw& law) {
  check_law(obs, law);
  switch (obs.kind()) {
    case ObservableKind::kLinear:
      return law.basis.coordinates(obs.fields().front()).dot(law.mean);
    case ObservableKind::kQuadratic:
      return quadratic_expectation(obs.form(), law);
    case ObservableKind::kSmooth: {
      auto terms = expand_product(obs.function(), static_cast<int>(obs.fields().size()));
      if (!terms) return std::nullopt;
      Eigen::VectorXd mu;
      Eigen::MatrixXd cov;
      pairing_law(obs.fields(), law, mu, cov);
      double acc = 0.0;
      for (const auto& [expo, coeff] : *terms) {
        std::vector<int> idx;
        for (int i = 0; i < static_cast<int>(expo.size()); ++i) {
          for (int rep = 0; rep < expo[static_cast<std::size_t>(i)]; ++rep) idx.push_back(i);
        }
        acc += coeff * gaussian_moment(std::move(idx), mu, cov);
      }
      return acc;
    }
  }
  throw std::logic_error("gaussian expectation: unknown kind");
}

double gaussian_expectation_quadrature(const Observable& obs, const GaussianLaw& law,
                                       double tolerance) {
  check_law(obs, law);
  if (obs.kind() != ObservableKind::kSmooth || obs.fields().size() != 1) {
    throw std::invalid_argument(
        "gaussian_expectation_quadrature: covers single-pairing smooth observables");
  }
  Eigen::VectorXd mu;
  Eigen::MatrixXd cov;
  pairing_law(obs.fields(), law, mu, cov);
  const double sigma_sq = std::max(cov(0, 0), 0.0);
  const ScalarFunction& f = obs.function();
  if (sigma_sq == 0.0) return f(mu[0]);
  const double sigma = std::sqrt(sigma_sq);
  auto integrand = [&](double u) {
    return f(mu[0] + sigma * u) * kInvSqrtTwoPi * std::exp(-0.5 * u * u);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, -kQuadratureRadius, kQuadratureRadius, 12, tolerance);
}

SampleMean gaussian_expectation_monte_carlo(const Observable& obs, const GaussianLaw& law,
                                            std::int64_t replicas, Rng& rng) {
  check_law(obs, law);
  if (replicas < 2) {
    throw std::invalid_argument("gaussian_expectation_monte_carlo: need >= 2 replicas");
  }
  GaussianSampler sampler(law);

  // Evaluate on coordinates directly; the basis is orthonormal, so pairings
  // and quadratic forms reduce to dot products with the sampled vector.
  std::vector<Eigen::VectorXd> r;
  for (const SpectralField& phi : obs.fields()) r.push_back(law.basis.coordinates(phi));
  Eigen::MatrixXd a_embedded;
  if (obs.kind() == ObservableKind::kQuadratic) {
    const BilinearForm& a = obs.form();
    std::vector<int> where = basis_embedding(a.basis(), law.basis);
    a_embedded = Eigen::MatrixXd::Zero(law.basis.size(), law.basis.size());
    for (int i = 0; i < a.basis().size(); ++i) {
      const int li = where[static_cast<std::size_t>(i)];
      if (li < 0) continue;
      for (int j = 0; j < a.basis().size(); ++j) {
        const int lj = where[static_cast<std::size_t>(j)];
        if (lj < 0) continue;
        a_embedded(li, lj) += a.entries()(i, j);
      }
    }
  }

  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t k = 0; k < replicas; ++k) {
    Eigen::VectorXd s = sampler.sample_coordinates(rng);
    double value = 0.0;
    switch (obs.kind()) {
      case ObservableKind::kLinear:
        value = r.front().dot(s);
        break;
      case ObservableKind::kSmooth: {
        value = 1.0;
        for (const Eigen::VectorXd& ri : r) value *= obs.function()(ri.dot(s));
        break;
      }
      case ObservableKind::kQuadratic:
        value = s.dot(a_embedded * s);
        break;
    }
    const double delta = value - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (value - mean);
  }
  SampleMean out;
  out.value = mean;
  out.standard_error =
      std::sqrt(m2 / (static_cast<double>(replicas) * static_cast<double>(replicas - 1)));
  out.replicas = replicas;
  return out;
}

}  // namespace sseplab
