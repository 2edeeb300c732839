#include "sseplab/torus/spectral_field.hpp"

#include <cmath>
#include <stdexcept>

namespace sseplab {

SpectralField::SpectralField(int dim, int K) : d_(dim), K_(K) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("SpectralField: d must be 1 or 2");
  if (K < 0) throw std::invalid_argument("SpectralField: K must be >= 0");
  std::int64_t m = 1;
  for (int j = 0; j < d_; ++j) m *= 2 * K_ + 1;
  c_.assign(static_cast<std::size_t>(m), {0.0, 0.0});
}

bool SpectralField::in_box(const ModeIndex& k) const {
  for (int j = 0; j < d_; ++j)
    if (k[j] < -K_ || k[j] > K_) return false;
  return true;
}

std::int64_t SpectralField::index_of(const ModeIndex& k) const {
  if (!in_box(k)) throw std::out_of_range("SpectralField: mode outside truncation box");
  std::int64_t idx = 0;
  for (int j = 0; j < d_; ++j) idx = idx * (2 * K_ + 1) + (k[j] + K_);
  return idx;
}

ModeIndex SpectralField::mode_at(std::int64_t idx) const {
  ModeIndex k{0, 0};
  for (int j = d_ - 1; j >= 0; --j) {
    k[j] = static_cast<int>(idx % (2 * K_ + 1)) - K_;
    idx /= 2 * K_ + 1;
  }
  return k;
}

double SpectralField::enforce_hermitian() {
  double worst = 0.0;
  for (std::int64_t i = 0; i < size(); ++i) {
    ModeIndex k = mode_at(i);
    ModeIndex mk{-k[0], -k[1]};
    std::int64_t im = index_of(mk);
    if (im < i) continue;
    auto a = c_[static_cast<std::size_t>(i)];
    auto b = c_[static_cast<std::size_t>(im)];
    worst = std::max(worst, std::abs(a - std::conj(b)));
    auto avg = 0.5 * (a + std::conj(b));
    c_[static_cast<std::size_t>(i)] = avg;
    c_[static_cast<std::size_t>(im)] = std::conj(avg);
  }
  return worst;
}

double SpectralField::evaluate(const std::array<double, 2>& x) const {
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t i = 0; i < size(); ++i) {
    ModeIndex k = mode_at(i);
    double phase = 0.0;
    for (int j = 0; j < d_; ++j) phase += k[j] * x[j];
    acc += c_[static_cast<std::size_t>(i)] * std::polar(1.0, phase);
  }
  return acc.real();
}

double SpectralField::sobolev_norm(double J) const {
  double acc = 0.0;
  for (std::int64_t i = 0; i < size(); ++i) {
    ModeIndex k = mode_at(i);
    double w = std::pow(1.0 + mode_norm_sq(k, d_), J);
    acc += w * std::norm(c_[static_cast<std::size_t>(i)]);
  }
  return std::sqrt(acc);
}

SpectralField SpectralField::truncated(int K_new) const {
  SpectralField out(d_, K_new);
  for (std::int64_t i = 0; i < out.size(); ++i) {
    ModeIndex k = out.mode_at(i);
    if (in_box(k)) out.coeffs()[static_cast<std::size_t>(i)] = coeff(k);
  }
  return out;
}

SpectralField SpectralField::single_mode(int dim, int K, const ModeIndex& k,
                                         std::complex<double> c) {
  SpectralField out(dim, K);
  out.set_coeff(k, c);
  ModeIndex mk{-k[0], -k[1]};
  if (mk != k) out.set_coeff(mk, std::conj(c));
  return out;
}

}  // namespace sseplab
