#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sseplab/obs/scalar_function.hpp"
#include "sseplab/torus/bilinear_form.hpp"
#include "sseplab/torus/grid_field.hpp"
#include "sseplab/torus/spectral_field.hpp"

namespace sseplab {

enum class ObservableKind { kLinear, kSmooth, kQuadratic };

/// Test functional of the fluctuation field, evaluated with identical
/// semantics on a lattice field (pairings go through the spectral projection)
/// and on a band-limited spectral sample. Three kinds:
///   linear(phi):      <pr_n phi, zeta>_n
///   smooth(f, phis):  product over i of f(<pr_n phi_i, zeta>_n); a single phi
///                     is plain composition, several identity factors build
///                     monomials in several pairings
///   quadratic(A):     A applied twice to the spectral extension of zeta
/// Immutable after construction; all evaluation is const and thread-safe.
class Observable {
 public:
  static Observable linear(SpectralField phi);
  static Observable smooth(ScalarFunction f, std::vector<SpectralField> phis);
  static Observable quadratic(BilinearForm a);

  ObservableKind kind() const { return kind_; }
  int dim() const { return dim_; }

  /// Pairing fields; one entry for linear, m entries for smooth, empty for
  /// quadratic.
  const std::vector<SpectralField>& fields() const { return phis_; }
  const ScalarFunction& function() const;
  const BilinearForm& form() const;

  double eval_on_particle(const GridField& zeta) const;
  double eval_on_gaussian_sample(const SpectralField& zeta) const;

  /// Reported smoothness budget: the largest sum_k |c_k| (1+|k|)^order over
  /// the pairing fields (a sup-norm bound on derivatives up to `order`), or
  /// the weighted Hilbert-Schmidt norm for quadratic forms. Metadata only.
  double smoothness_proxy(int order) const;

 private:
  Observable(ObservableKind kind, int dim, std::vector<SpectralField> phis,
             std::optional<ScalarFunction> f, std::optional<BilinearForm> a)
      : kind_(kind), dim_(dim), phis_(std::move(phis)), f_(std::move(f)), a_(std::move(a)) {}

  ObservableKind kind_;
  int dim_;
  std::vector<SpectralField> phis_;
  std::optional<ScalarFunction> f_;
  std::optional<BilinearForm> a_;
};

/// Continuum L2 pairing of two Hermitian band-limited fields: the coefficient
/// sum over the intersection of the two mode boxes.
double l2_pairing(const SpectralField& a, const SpectralField& b);

/// Truncated negative-order Sobolev norm sqrt(sum_k (1+|k|^2)^{-I} |c_k|^2);
/// the grid overload measures the spectral extension of the field. Requires
/// I > d/2 so the mode sum has a finite untruncated limit.
double sobolev_norm_minus_I(const SpectralField& zeta, double smoothness_index);
double sobolev_norm_minus_I(const GridField& zeta, double smoothness_index);

/// Partial sum of sum_{k in Z^d} (1+|k|^2)^{-I} over the box |k_j| <= cutoff.
/// Underestimates the full constant, so bounds checked against it are
/// conservative. Requires I > d/2.
double sobolev_constant(int dim, double smoothness_index, int cutoff);

}  // namespace sseplab
