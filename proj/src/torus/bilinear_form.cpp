#include "sseplab/torus/bilinear_form.hpp"

#include <cmath>
#include <stdexcept>

namespace sseplab {

BilinearForm::BilinearForm(int dim, int K)
    : basis_(dim, K), m_(Eigen::MatrixXd::Zero(basis_.size(), basis_.size())) {}

BilinearForm::BilinearForm(RealModeBasis basis, Eigen::MatrixXd entries)
    : basis_(std::move(basis)), m_(std::move(entries)) {
  if (m_.rows() != basis_.size() || m_.cols() != basis_.size())
    throw std::invalid_argument("BilinearForm: entry matrix does not match basis");
}

double BilinearForm::apply(const SpectralField& f, const SpectralField& g) const {
  Eigen::VectorXd rf = basis_.coordinates(f);
  Eigen::VectorXd rg = basis_.coordinates(g);
  return rf.dot(m_ * rg);
}

Eigen::MatrixXcd BilinearForm::complex_entries() const {
  Eigen::MatrixXcd U = basis_.complex_from_real();
  return U.transpose() * m_.cast<std::complex<double>>() * U;
}

double BilinearForm::hs_norm(double J) const {
  double acc = 0.0;
  for (int i = 0; i < basis_.size(); ++i) {
    double wi = std::pow(1.0 + basis_.mode_norm_sq(i), -J);
    for (int j = 0; j < basis_.size(); ++j) {
      double wj = std::pow(1.0 + basis_.mode_norm_sq(j), -J);
      acc += wi * wj * m_(i, j) * m_(i, j);
    }
  }
  return std::sqrt(acc);
}

BilinearForm BilinearForm::rank_one(const SpectralField& phi) {
  RealModeBasis basis(phi.dim(), phi.truncation());
  Eigen::VectorXd r = basis.coordinates(phi);
  return BilinearForm(basis, r * r.transpose());
}

}  // namespace sseplab
