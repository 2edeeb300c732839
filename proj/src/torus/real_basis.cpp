#include "sseplab/torus/real_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace sseplab {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880;
}

RealModeBasis::RealModeBasis(int dim, int K) : d_(dim), K_(K) {
  if (dim < 1 || dim > 2) throw std::invalid_argument("RealModeBasis: d must be 1 or 2");
  if (K < 0) throw std::invalid_argument("RealModeBasis: K must be >= 0");
  modes_.push_back({ModeIndex{0, 0}, Trig::constant});
  SpectralField box(dim, K);
  for (std::int64_t i = 0; i < box.size(); ++i) {
    ModeIndex k = box.mode_at(i);
    if (!lex_positive(k, dim)) continue;
    modes_.push_back({k, Trig::cosine});
    modes_.push_back({k, Trig::sine});
  }
}

double RealModeBasis::evaluate(int i, const std::array<double, 2>& x) const {
  const RealMode& m = modes_[static_cast<std::size_t>(i)];
  if (m.trig == Trig::constant) return 1.0;
  double phase = 0.0;
  for (int j = 0; j < d_; ++j) phase += m.k[j] * x[j];
  return m.trig == Trig::cosine ? kSqrt2 * std::cos(phase) : kSqrt2 * std::sin(phase);
}

Eigen::VectorXd RealModeBasis::coordinates(const SpectralField& f) const {
  if (f.dim() != d_) throw std::invalid_argument("coordinates: dimension mismatch");
  Eigen::VectorXd r = Eigen::VectorXd::Zero(size());
  for (int i = 0; i < size(); ++i) {
    const RealMode& m = modes_[static_cast<std::size_t>(i)];
    std::complex<double> c =
        f.in_box(m.k) ? f.coeff(m.k) : std::complex<double>{0.0, 0.0};
    switch (m.trig) {
      case Trig::constant: r[i] = c.real(); break;
      case Trig::cosine: r[i] = kSqrt2 * c.real(); break;
      case Trig::sine: r[i] = -kSqrt2 * c.imag(); break;
    }
  }
  return r;
}

SpectralField RealModeBasis::field_from_coordinates(const Eigen::VectorXd& r) const {
  if (r.size() != size())
    throw std::invalid_argument("field_from_coordinates: size mismatch");
  SpectralField f(d_, K_);
  for (int i = 0; i < size(); ++i) {
    const RealMode& m = modes_[static_cast<std::size_t>(i)];
    if (m.trig == Trig::constant) {
      f.set_coeff(m.k, {r[i], 0.0});
    } else {
      ModeIndex mk{-m.k[0], -m.k[1]};
      std::complex<double> cur = f.coeff(m.k);
      std::complex<double> add = (m.trig == Trig::cosine)
                                     ? std::complex<double>{r[i] / kSqrt2, 0.0}
                                     : std::complex<double>{0.0, -r[i] / kSqrt2};
      f.set_coeff(m.k, cur + add);
      f.set_coeff(mk, std::conj(cur + add));
    }
  }
  return f;
}

Eigen::MatrixXcd RealModeBasis::complex_from_real() const {
  SpectralField box(d_, K_);
  const int M = size();
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(M, M);
  const std::complex<double> I{0.0, 1.0};
  for (std::int64_t a = 0; a < box.size(); ++a) {
    ModeIndex k = box.mode_at(a);
    if (k == ModeIndex{0, 0}) {
      for (int i = 0; i < M; ++i)
        if (modes_[static_cast<std::size_t>(i)].trig == Trig::constant) U(i, a) = 1.0;
      continue;
    }
    ModeIndex kk = lex_positive(k, d_) ? k : ModeIndex{-k[0], -k[1]};
    double sign = lex_positive(k, d_) ? 1.0 : -1.0;
    for (int i = 0; i < M; ++i) {
      const RealMode& m = modes_[static_cast<std::size_t>(i)];
      if (m.k != kk) continue;
      if (m.trig == Trig::cosine) U(i, a) = 1.0 / kSqrt2;
      if (m.trig == Trig::sine) U(i, a) = sign * I / kSqrt2;
    }
  }
  return U;
}

Eigen::MatrixXcd RealModeBasis::real_from_complex() const {
  SpectralField box(d_, K_);
  const int M = size();
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(M, M);
  const std::complex<double> I{0.0, 1.0};
  for (int i = 0; i < M; ++i) {
    const RealMode& m = modes_[static_cast<std::size_t>(i)];
    if (m.trig == Trig::constant) {
      T(box.index_of(ModeIndex{0, 0}), i) = 1.0;
      continue;
    }
    std::int64_t ap = box.index_of(m.k);
    std::int64_t am = box.index_of(ModeIndex{-m.k[0], -m.k[1]});
    if (m.trig == Trig::cosine) {
      T(ap, i) = 1.0 / kSqrt2;
      T(am, i) = 1.0 / kSqrt2;
    } else {
      T(ap, i) = -I / kSqrt2;
      T(am, i) = I / kSqrt2;
    }
  }
  return T;
}

}  // namespace sseplab
