#pragma once

#include <string>
#include <vector>

namespace sseplab {

enum class ScalarFunctionKind { kPolynomial, kCosine, kExpClip };

/// Closed-form scalar function from a finite, serializable catalog:
/// polynomials up to degree four, cos(x), and the bounded exponential
/// exp(4 tanh(x/4)). Every entry carries certified sup-norm bounds for its
/// first three derivatives so experiment reports can state the smoothness
/// budget of an observable; the bounds are metadata and never enter the
/// numerics.
class ScalarFunction {
 public:
  /// coeffs[p] multiplies x^p; at most five coefficients (degree <= 4).
  static ScalarFunction polynomial(std::vector<double> coeffs);
  static ScalarFunction identity();
  static ScalarFunction square();
  static ScalarFunction cosine();
  static ScalarFunction exp_clip();

  double operator()(double x) const;

  ScalarFunctionKind kind() const { return kind_; }
  bool is_polynomial() const { return kind_ == ScalarFunctionKind::kPolynomial; }
  const std::string& name() const { return name_; }

  /// Polynomial coefficients; empty for the non-polynomial entries.
  const std::vector<double>& coefficients() const { return coeffs_; }

  /// Upper bound on sup_{|x| <= radius} |f^(order)(x)| for order in {1,2,3}.
  /// cos and exp_clip have radius-independent bounds; polynomial bounds grow
  /// with the radius.
  double derivative_bound(int order, double radius) const;

 private:
  ScalarFunction(ScalarFunctionKind kind, std::string name, std::vector<double> coeffs)
      : kind_(kind), name_(std::move(name)), coeffs_(std::move(coeffs)) {}

  ScalarFunctionKind kind_;
  std::string name_;
  std::vector<double> coeffs_;
};

}  // namespace sseplab
