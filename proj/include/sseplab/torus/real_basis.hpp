#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sseplab/torus/geometry.hpp"
#include "sseplab/torus/spectral_field.hpp"

namespace sseplab {

enum class Trig { constant, cosine, sine };

struct RealMode {
  ModeIndex k{0, 0};
  Trig trig = Trig::constant;
};

/// Orthonormal real trigonometric basis of the K-band: the constant 1, then
/// sqrt(2)cos(k.x) and sqrt(2)sin(k.x) for each k in the lexicographic
/// half-space of {-K..K}^d \ {0}, in row-major box order. The basis has
/// (2K+1)^d elements and matches the complex box of SpectralField(K).
class RealModeBasis {
 public:
  RealModeBasis(int dim, int K);

  int dim() const { return d_; }
  int truncation() const { return K_; }
  int size() const { return static_cast<int>(modes_.size()); }
  const RealMode& mode(int i) const { return modes_[static_cast<std::size_t>(i)]; }

  double evaluate(int i, const std::array<double, 2>& x) const;
  double mode_norm_sq(int i) const { return sseplab::mode_norm_sq(modes_[i].k, d_); }

  /// Coordinates of a Hermitian spectral field in this basis:
  /// r_const = Re c_0, r_cos(k) = sqrt(2) Re c_k, r_sin(k) = -sqrt(2) Im c_k.
  Eigen::VectorXd coordinates(const SpectralField& f) const;
  SpectralField field_from_coordinates(const Eigen::VectorXd& r) const;

  /// Change of basis U with varsigma_a = sum_i U(i,a) e_i, columns indexed by
  /// the complex box order of SpectralField(K).
  Eigen::MatrixXcd complex_from_real() const;
  /// Change of basis T with e_i = sum_a T(a,i) varsigma_a.
  Eigen::MatrixXcd real_from_complex() const;

 private:
  int d_;
  int K_;
  std::vector<RealMode> modes_;
};

}  // namespace sseplab
