#pragma once

#include <Eigen/Dense>

#include "sseplab/torus/real_basis.hpp"

namespace sseplab {

/// Symmetric bilinear form on the K-band, stored by its entries in the real
/// orthonormal basis: A[f,g] = r(f)^T M r(g).
class BilinearForm {
 public:
  BilinearForm(int dim, int K);
  BilinearForm(RealModeBasis basis, Eigen::MatrixXd entries);

  const RealModeBasis& basis() const { return basis_; }
  const Eigen::MatrixXd& entries() const { return m_; }
  Eigen::MatrixXd& entries() { return m_; }

  double apply(const SpectralField& f, const SpectralField& g) const;

  /// Entries in the complex mode basis, W[a,b] = A[varsigma_a, varsigma_b]
  /// (bilinear, no conjugation), box order of SpectralField(K).
  Eigen::MatrixXcd complex_entries() const;

  /// Hilbert-Schmidt norm with weights (1+|k|^2)^{-J} (1+|l|^2)^{-J} in the
  /// real basis; basis-independent for fixed J.
  double hs_norm(double J) const;

  static BilinearForm rank_one(const SpectralField& phi);

 private:
  RealModeBasis basis_;
  Eigen::MatrixXd m_;
};

}  // namespace sseplab
