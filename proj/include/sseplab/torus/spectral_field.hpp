#pragma once

#include <complex>
#include <vector>

#include "sseplab/torus/geometry.hpp"

namespace sseplab {

/// Band-limited function on the continuum torus, stored as complex Fourier
/// coefficients c_k over the box {-K..K}^d with Hermitian symmetry
/// c_{-k} = conj(c_k). The represented function is sum_k c_k e^{i k.x}.
class SpectralField {
 public:
  SpectralField(int dim, int K);

  int dim() const { return d_; }
  int truncation() const { return K_; }
  std::int64_t size() const { return static_cast<std::int64_t>(c_.size()); }

  bool in_box(const ModeIndex& k) const;
  std::int64_t index_of(const ModeIndex& k) const;
  ModeIndex mode_at(std::int64_t idx) const;

  std::complex<double> coeff(const ModeIndex& k) const { return c_[index_of(k)]; }
  void set_coeff(const ModeIndex& k, std::complex<double> v) { c_[index_of(k)] = v; }

  const std::vector<std::complex<double>>& coeffs() const { return c_; }
  std::vector<std::complex<double>>& coeffs() { return c_; }

  /// Symmetrizes to c_{-k} = conj(c_k); returns the largest asymmetry found.
  double enforce_hermitian();

  /// Pointwise evaluation (real part; the imaginary part of a Hermitian
  /// field vanishes up to roundoff).
  double evaluate(const std::array<double, 2>& x) const;

  /// sqrt(sum_k (1+|k|^2)^J |c_k|^2)
  double sobolev_norm(double J) const;

  SpectralField truncated(int K_new) const;

  static SpectralField single_mode(int dim, int K, const ModeIndex& k,
                                   std::complex<double> c);

 private:
  int d_;
  int K_;
  std::vector<std::complex<double>> c_;
};

}  // namespace sseplab
