#include "sseplab/obs/scalar_function.hpp"

#include <cmath>
#include <stdexcept>

namespace sseplab {
namespace {

constexpr int kMaxDegree = 4;

// exp(4 tanh(x/4)) stays in [e^-4, e^4]; with g(x) = 4 tanh(x/4),
// |g'| <= 1, |g''| <= (1/2) max(sech^2 u tanh u) = 1/(3 sqrt 3), and
// |g'''| <= 1/4, so chain-rule products of e^g are bounded by the
// constants below (safe overestimates, rounded up).
constexpr double kExpClipValueBound = 54.598150033144236;  // e^4
constexpr double kExpClipD2Factor = 1.20;                  // 1 + |g''|
constexpr double kExpClipD3Factor = 1.85;                  // 1 + 3|g''| + |g'''|

}  // namespace

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  if (static_cast<int>(coeffs.size()) > kMaxDegree + 1) {
    throw std::invalid_argument("ScalarFunction: polynomial degree above 4");
  }
  return ScalarFunction(ScalarFunctionKind::kPolynomial, "polynomial", std::move(coeffs));
}

ScalarFunction ScalarFunction::identity() {
  ScalarFunction f = polynomial({0.0, 1.0});
  f.name_ = "identity";
  return f;
}

ScalarFunction ScalarFunction::square() {
  ScalarFunction f = polynomial({0.0, 0.0, 1.0});
  f.name_ = "square";
  return f;
}

ScalarFunction ScalarFunction::cosine() {
  return ScalarFunction(ScalarFunctionKind::kCosine, "cos", {});
}

ScalarFunction ScalarFunction::exp_clip() {
  return ScalarFunction(ScalarFunctionKind::kExpClip, "exp_clip", {});
}

double ScalarFunction::operator()(double x) const {
  switch (kind_) {
    case ScalarFunctionKind::kPolynomial: {
      double acc = 0.0;
      for (std::size_t p = coeffs_.size(); p-- > 0;) acc = acc * x + coeffs_[p];
      return acc;
    }
    case ScalarFunctionKind::kCosine:
      return std::cos(x);
    case ScalarFunctionKind::kExpClip:
      return std::exp(4.0 * std::tanh(0.25 * x));
  }
  throw std::logic_error("ScalarFunction: unknown kind");
}

double ScalarFunction::derivative_bound(int order, double radius) const {
  if (order < 1 || order > 3) {
    throw std::invalid_argument("ScalarFunction: derivative bounds cover orders 1..3");
  }
  if (radius < 0.0) throw std::invalid_argument("ScalarFunction: negative radius");
  switch (kind_) {
    case ScalarFunctionKind::kPolynomial: {
      double acc = 0.0;
      for (int p = order; p < static_cast<int>(coeffs_.size()); ++p) {
        double falling = 1.0;
        for (int j = 0; j < order; ++j) falling *= static_cast<double>(p - j);
        acc += std::abs(coeffs_[static_cast<std::size_t>(p)]) * falling *
               std::pow(radius, p - order);
      }
      return acc;
    }
    case ScalarFunctionKind::kCosine:
      return 1.0;
    case ScalarFunctionKind::kExpClip:
      if (order == 1) return kExpClipValueBound;
      if (order == 2) return kExpClipD2Factor * kExpClipValueBound;
      return kExpClipD3Factor * kExpClipValueBound;
  }
  throw std::logic_error("ScalarFunction: unknown kind");
}

}  // namespace sseplab
