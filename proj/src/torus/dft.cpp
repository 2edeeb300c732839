#include "sseplab/torus/dft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <mutex>
#include <vector>

namespace sseplab {
namespace {

// FFTW planning is not thread safe and plans are cheap at these sizes, so one
// lock covers plan + execute + destroy.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

void run_fftw(int d, int len, std::vector<std::complex<double>>& data, int sign) {
  std::lock_guard<std::mutex> lock(fftw_mutex());
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = (d == 1)
                       ? fftw_plan_dft_1d(len, ptr, ptr, sign, FFTW_ESTIMATE)
                       : fftw_plan_dft_2d(len, len, ptr, ptr, sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

// Frequency index m in {0..2n} for mode k in {-n..n}.
inline int fold(int k, int len) { return k >= 0 ? k : k + len; }

}  // namespace

SpectralField dft_forward(const GridField& f) {
  const Torus& g = f.torus();
  const int len = g.len();
  std::vector<std::complex<double>> data(f.values().begin(), f.values().end());
  run_fftw(g.d, len, data, FFTW_FORWARD);

  SpectralField out(g.d, g.n);
  const double scale = 1.0 / static_cast<double>(g.sites());
  for (std::int64_t i = 0; i < out.size(); ++i) {
    ModeIndex k = out.mode_at(i);
    std::int64_t m = 0;
    for (int j = 0; j < g.d; ++j) m = m * len + fold(k[j], len);
    out.coeffs()[static_cast<std::size_t>(i)] = data[static_cast<std::size_t>(m)] * scale;
  }
  return out;
}

GridField dft_inverse(const SpectralField& c, int n) {
  Torus g(c.dim(), n);
  const int len = g.len();
  const int band = std::min(c.truncation(), n);
  std::vector<std::complex<double>> data(static_cast<std::size_t>(g.sites()), {0.0, 0.0});
  for (std::int64_t i = 0; i < c.size(); ++i) {
    ModeIndex k = c.mode_at(i);
    bool keep = true;
    for (int j = 0; j < c.dim(); ++j)
      if (k[j] < -band || k[j] > band) keep = false;
    if (!keep) continue;
    std::int64_t m = 0;
    for (int j = 0; j < c.dim(); ++j) m = m * len + fold(k[j], len);
    data[static_cast<std::size_t>(m)] = c.coeffs()[static_cast<std::size_t>(i)];
  }
  run_fftw(g.d, len, data, FFTW_BACKWARD);

  GridField out(g);
  for (std::int64_t i = 0; i < g.sites(); ++i)
    out[i] = data[static_cast<std::size_t>(i)].real();
  return out;
}

}  // namespace sseplab
