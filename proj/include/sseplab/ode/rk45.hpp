#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sseplab {

/// Adaptive Dormand-Prince 5(4) integrator for dy/dt = f(t, y).
/// `rhs` has signature void(double t, const std::vector<double>& y,
/// std::vector<double>& dydt). Integrates y in place from t0 to t1.
template <class RHS>
void integrate_rk45(RHS&& rhs, std::vector<double>& y, double t0, double t1,
                    double rtol = 1.0e-12, double atol = 1.0e-12) {
  if (t1 < t0) throw std::invalid_argument("integrate_rk45: t1 must be >= t0");
  if (t1 == t0) return;

  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  const std::size_t m = y.size();
  std::vector<double> k1(m), k2(m), k3(m), k4(m), k5(m), k6(m), k7(m), tmp(m),
      ynew(m);

  double t = t0;
  double h = (t1 - t0) / 100.0;
  const double hmin = (t1 - t0) * 1.0e-14;
  int rejected_in_row = 0;

  while (t < t1) {
    if (h > t1 - t) h = t1 - t;
    rhs(t, y, k1);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + h / 5.0, tmp, k2);
    for (std::size_t i = 0; i < m; ++i)
      tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + 3.0 * h / 10.0, tmp, k3);
    for (std::size_t i = 0; i < m; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + 4.0 * h / 5.0, tmp, k4);
    for (std::size_t i = 0; i < m; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + 8.0 * h / 9.0, tmp, k5);
    for (std::size_t i = 0; i < m; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                           a65 * k5[i]);
    rhs(t + h, tmp, k6);
    for (std::size_t i = 0; i < m; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    rhs(t + h, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                      e6 * k6[i] + e7 * k7[i]);
      double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double r = e / scale;
      err += r * r;
    }
    err = std::sqrt(err / static_cast<double>(m));

    if (err <= 1.0) {
      t += h;
      y.swap(ynew);
      rejected_in_row = 0;
      double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::min(5.0, std::max(0.2, grow));
    } else {
      ++rejected_in_row;
      h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
      if (h < hmin || rejected_in_row > 200)
        throw std::runtime_error("integrate_rk45: step size underflow");
    }
  }
}

}  // namespace sseplab
