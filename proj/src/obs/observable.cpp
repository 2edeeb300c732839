#include "sseplab/obs/observable.hpp"

#include <cmath>
#include <stdexcept>

#include "sseplab/torus/dft.hpp"
#include "sseplab/torus/operators.hpp"

namespace sseplab {

Observable Observable::linear(SpectralField phi) {
  int d = phi.dim();
  std::vector<SpectralField> phis;
  phis.push_back(std::move(phi));
  return Observable(ObservableKind::kLinear, d, std::move(phis), std::nullopt, std::nullopt);
}

Observable Observable::smooth(ScalarFunction f, std::vector<SpectralField> phis) {
  if (phis.empty()) throw std::invalid_argument("Observable: smooth needs a pairing field");
  int d = phis.front().dim();
  for (const SpectralField& phi : phis) {
    if (phi.dim() != d) throw std::invalid_argument("Observable: mixed dimensions");
  }
  return Observable(ObservableKind::kSmooth, d, std::move(phis), std::move(f), std::nullopt);
}

Observable Observable::quadratic(BilinearForm a) {
  int d = a.basis().dim();
  return Observable(ObservableKind::kQuadratic, d, {}, std::nullopt, std::move(a));
}

const ScalarFunction& Observable::function() const {
  if (!f_) throw std::logic_error("Observable: no scalar function for this kind");
  return *f_;
}

const BilinearForm& Observable::form() const {
  if (!a_) throw std::logic_error("Observable: no bilinear form for this kind");
  return *a_;
}

double Observable::eval_on_particle(const GridField& zeta) const {
  if (zeta.torus().d != dim_) throw std::invalid_argument("Observable: dimension mismatch");
  const int n = zeta.torus().n;
  switch (kind_) {
    case ObservableKind::kLinear:
      return inner_product_discrete(project(phis_.front(), n), zeta);
    case ObservableKind::kSmooth: {
      double acc = 1.0;
      for (const SpectralField& phi : phis_) {
        acc *= (*f_)(inner_product_discrete(project(phi, n), zeta));
      }
      return acc;
    }
    case ObservableKind::kQuadratic: {
      SpectralField ext = extend(zeta);
      return a_->apply(ext, ext);
    }
  }
  throw std::logic_error("Observable: unknown kind");
}

double Observable::eval_on_gaussian_sample(const SpectralField& zeta) const {
  if (zeta.dim() != dim_) throw std::invalid_argument("Observable: dimension mismatch");
  switch (kind_) {
    case ObservableKind::kLinear:
      return l2_pairing(phis_.front(), zeta);
    case ObservableKind::kSmooth: {
      double acc = 1.0;
      for (const SpectralField& phi : phis_) acc *= (*f_)(l2_pairing(phi, zeta));
      return acc;
    }
    case ObservableKind::kQuadratic:
      return a_->apply(zeta, zeta);
  }
  throw std::logic_error("Observable: unknown kind");
}

double Observable::smoothness_proxy(int order) const {
  if (kind_ == ObservableKind::kQuadratic) return a_->hs_norm(order);
  double worst = 0.0;
  for (const SpectralField& phi : phis_) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < phi.size(); ++i) {
      ModeIndex k = phi.mode_at(i);
      acc += std::abs(phi.coeffs()[static_cast<std::size_t>(i)]) *
             std::pow(1.0 + std::sqrt(mode_norm_sq(k, dim_)), order);
    }
    worst = std::max(worst, acc);
  }
  return worst;
}

double l2_pairing(const SpectralField& a, const SpectralField& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("l2_pairing: dimension mismatch");
  const SpectralField& small = a.truncation() <= b.truncation() ? a : b;
  const SpectralField& large = a.truncation() <= b.truncation() ? b : a;
  double acc = 0.0;
  for (std::int64_t i = 0; i < small.size(); ++i) {
    ModeIndex k = small.mode_at(i);
    acc += (std::conj(small.coeffs()[static_cast<std::size_t>(i)]) * large.coeff(k)).real();
  }
  return acc;
}

double sobolev_norm_minus_I(const SpectralField& zeta, double smoothness_index) {
  if (smoothness_index <= 0.5 * zeta.dim()) {
    throw std::invalid_argument("sobolev_norm_minus_I: need I > d/2");
  }
  return zeta.sobolev_norm(-smoothness_index);
}

double sobolev_norm_minus_I(const GridField& zeta, double smoothness_index) {
  if (smoothness_index <= 0.5 * zeta.torus().d) {
    throw std::invalid_argument("sobolev_norm_minus_I: need I > d/2");
  }
  return extend(zeta).sobolev_norm(-smoothness_index);
}

double sobolev_constant(int dim, double smoothness_index, int cutoff) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("sobolev_constant: d must be 1 or 2");
  if (smoothness_index <= 0.5 * dim) {
    throw std::invalid_argument("sobolev_constant: need I > d/2");
  }
  if (cutoff < 0) throw std::invalid_argument("sobolev_constant: negative cutoff");
  double acc = 0.0;
  if (dim == 1) {
    for (int k = -cutoff; k <= cutoff; ++k) {
      acc += std::pow(1.0 + static_cast<double>(k) * k, -smoothness_index);
    }
  } else {
    for (int k0 = -cutoff; k0 <= cutoff; ++k0) {
      for (int k1 = -cutoff; k1 <= cutoff; ++k1) {
        double norm_sq = static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1;
        acc += std::pow(1.0 + norm_sq, -smoothness_index);
      }
    }
  }
  return acc;
}

}  // namespace sseplab
