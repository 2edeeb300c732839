#include "sseplab/ou/gaussian_law.hpp"

#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace sseplab {

GaussianSampler::GaussianSampler(const GaussianLaw& law)
    : basis_(law.basis), mean_(law.mean) {
  if (law.mean.size() != law.basis.size() || law.cov.rows() != law.basis.size() ||
      law.cov.cols() != law.basis.size())
    throw std::invalid_argument("GaussianSampler: law dimensions do not match basis");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(law.cov);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("GaussianSampler: eigendecomposition failed");
  min_eigenvalue_ = es.eigenvalues().minCoeff();
  if (min_eigenvalue_ < kCovarianceEigenvalueFloor) {
    std::ostringstream msg;
    msg << "GaussianSampler: covariance indefinite, most negative eigenvalue "
        << min_eigenvalue_;
    throw std::invalid_argument(msg.str());
  }
  Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  sqrt_ = es.eigenvectors() * clipped.cwiseSqrt().asDiagonal() *
          es.eigenvectors().transpose();
}

Eigen::VectorXd GaussianSampler::sample_coordinates(Rng& rng) const {
  Eigen::VectorXd xi(mean_.size());
  for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = rng.normal();
  return mean_ + sqrt_ * xi;
}

SpectralField GaussianSampler::sample(Rng& rng) const {
  return basis_.field_from_coordinates(sample_coordinates(rng));
}

SpectralField sample(const GaussianLaw& law, Rng& rng) {
  return GaussianSampler(law).sample(rng);
}

}  // namespace sseplab
