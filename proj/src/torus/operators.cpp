#include "sseplab/torus/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "sseplab/torus/dft.hpp"

namespace sseplab {

double inner_product_discrete(const GridField& f, const GridField& g) {
  if (!(f.torus() == g.torus()))
    throw std::invalid_argument("inner_product_discrete: size mismatch");
  double acc = 0.0, comp = 0.0;
  for (std::int64_t i = 0; i < f.size(); ++i) {
    double term = f[i] * g[i] - comp;
    double next = acc + term;
    comp = (next - acc) - term;
    acc = next;
  }
  return acc / static_cast<double>(f.torus().sites());
}

SpectralField extend(const GridField& f) { return dft_forward(f); }

GridField project(const SpectralField& g, int n) { return dft_inverse(g, n); }

GridField discrete_derivative(const GridField& f, int axis) {
  const Torus& g = f.torus();
  if (axis < 0 || axis >= g.d)
    throw std::invalid_argument("discrete_derivative: axis out of range");
  const double scale = g.len() / kTwoPi;
  GridField out(g);
  for (std::int64_t i = 0; i < g.sites(); ++i)
    out[i] = scale * (f[g.neighbor(i, axis, 1)] - f[i]);
  return out;
}

GridField discrete_laplacian(const GridField& f) {
  const Torus& g = f.torus();
  const double scale = static_cast<double>(g.len()) * g.len() / (4.0 * kPi * kPi);
  GridField out(g);
  for (std::int64_t i = 0; i < g.sites(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < g.d; ++j)
      acc += f[g.neighbor(i, j, 1)] + f[g.neighbor(i, j, -1)] - 2.0 * f[i];
    out[i] = scale * acc;
  }
  return out;
}

GridField shift(const GridField& f, int axis) {
  const Torus& g = f.torus();
  if (axis < 0 || axis >= g.d) throw std::invalid_argument("shift: axis out of range");
  GridField out(g);
  for (std::int64_t i = 0; i < g.sites(); ++i) out[i] = f[g.neighbor(i, axis, 1)];
  return out;
}

double eigenvalue_lambda(const ModeIndex& k, int n, int d) {
  const int len = 2 * n + 1;
  double acc = 0.0;
  for (int j = 0; j < d; ++j) {
    if (k[j] < -n || k[j] > n)
      throw std::invalid_argument("eigenvalue_lambda: mode outside resolvable band");
    acc += 1.0 - std::cos(kTwoPi * k[j] / len);
  }
  return static_cast<double>(len) * len / (2.0 * kPi * kPi) * acc;
}

std::complex<double> eigenvalue_mu(const ModeIndex& k, int axis, int n) {
  const int len = 2 * n + 1;
  if (k[axis] < -n || k[axis] > n)
    throw std::invalid_argument("eigenvalue_mu: mode outside resolvable band");
  return static_cast<double>(len) / kTwoPi *
         (std::polar(1.0, kTwoPi * k[axis] / len) - 1.0);
}

GridField heat_propagate_discrete(const GridField& f, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_propagate_discrete: t must be >= 0");
  const Torus& g = f.torus();
  SpectralField c = dft_forward(f);
  for (std::int64_t i = 0; i < c.size(); ++i) {
    ModeIndex k = c.mode_at(i);
    c.coeffs()[static_cast<std::size_t>(i)] *=
        std::exp(-2.0 * kPi * kPi * eigenvalue_lambda(k, g.n, g.d) * t);
  }
  return dft_inverse(c, g.n);
}

SpectralField heat_propagate_continuous(const SpectralField& f, double t) {
  if (t < 0.0) throw std::invalid_argument("heat_propagate_continuous: t must be >= 0");
  SpectralField out = f;
  for (std::int64_t i = 0; i < out.size(); ++i) {
    ModeIndex k = out.mode_at(i);
    out.coeffs()[static_cast<std::size_t>(i)] *=
        std::exp(-2.0 * kPi * kPi * mode_norm_sq(k, f.dim()) * t);
  }
  return out;
}

double sobolev_norm(const SpectralField& f, double J) { return f.sobolev_norm(J); }

SpectralField trace_of_form(const BilinearForm& a) {
  const int d = a.basis().dim();
  const int K = a.basis().truncation();
  Eigen::MatrixXcd W = a.complex_entries();
  SpectralField box(d, K);
  SpectralField out(d, 2 * K);
  for (std::int64_t li = 0; li < out.size(); ++li) {
    ModeIndex l = out.mode_at(li);
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t ki = 0; ki < box.size(); ++ki) {
      ModeIndex k = box.mode_at(ki);
      ModeIndex kml{k[0] - l[0], k[1] - l[1]};
      ModeIndex mk{-k[0], -k[1]};
      if (!box.in_box(kml)) continue;
      acc += W(box.index_of(kml), box.index_of(mk));
    }
    out.coeffs()[static_cast<std::size_t>(li)] = acc;
  }
  out.enforce_hermitian();
  return out;
}

GridField trace_of_form_gradient_discrete(const BilinearForm& a, int n, int axis) {
  const int d = a.basis().dim();
  const int K = a.basis().truncation();
  const int band = std::min(K, n);
  Eigen::MatrixXcd W = a.complex_entries();
  SpectralField box(d, K);
  SpectralField bandbox(d, band);
  Torus g(d, n);
  GridField out(g);
  for (std::int64_t i = 0; i < g.sites(); ++i) {
    auto x = g.position(i);
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t la = 0; la < bandbox.size(); ++la) {
      ModeIndex l = bandbox.mode_at(la);
      std::complex<double> mu_l = eigenvalue_mu(l, axis, n);
      ModeIndex ml{-l[0], -l[1]};
      for (std::int64_t lb = 0; lb < bandbox.size(); ++lb) {
        ModeIndex lt = bandbox.mode_at(lb);
        ModeIndex mlt{-lt[0], -lt[1]};
        std::complex<double> w = W(box.index_of(ml), box.index_of(mlt));
        if (w == std::complex<double>{0.0, 0.0}) continue;
        double phase = 0.0;
        for (int j = 0; j < d; ++j) phase += (l[j] + lt[j]) * x[j];
        acc += mu_l * eigenvalue_mu(lt, axis, n) * w * std::polar(1.0, phase);
      }
    }
    out[i] = acc.real();
  }
  return out;
}

}  // namespace sseplab
