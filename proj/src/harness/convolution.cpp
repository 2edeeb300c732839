#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sseplab/harness/engines.hpp"
#include "sseplab/torus/operators.hpp"

namespace sseplab {
namespace {

constexpr std::int64_t kConvolutionSiteCap = 22;
constexpr std::int64_t kGridHalfCap = 8000000;

}  // namespace

double exact_initial_expectation(const Observable& obs, const BandLimitedProfile& rho0,
                                 int n, double tolerance) {
  if (obs.kind() != ObservableKind::kSmooth || obs.fields().size() != 1) {
    throw std::invalid_argument(
        "exact_initial_expectation: needs a single-pairing smooth observable");
  }
  if (tolerance <= 0.0) {
    throw std::invalid_argument("exact_initial_expectation: tolerance must be positive");
  }
  const int d = rho0.field().dim();
  Torus g(d, n);
  const std::int64_t sites = g.sites();
  if (sites > kConvolutionSiteCap) {
    throw std::invalid_argument("exact_initial_expectation: lattice above 22 sites");
  }

  // The pairing is a sum of independent two-atom site variables: with weight
  // w_x = phi(x) (2n+1)^{-d/2}, site x contributes w_x(1-rho_x) with
  // probability rho_x and -w_x rho_x otherwise (mean zero).
  const GridField rho_grid = project(rho0.field(), n);
  const GridField phi_grid = project(obs.fields().front(), n);
  const double scale = std::pow(static_cast<double>(g.len()), -0.5 * d);
  std::vector<double> up(static_cast<std::size_t>(sites));
  std::vector<double> down(static_cast<std::size_t>(sites));
  std::vector<double> prob(static_cast<std::size_t>(sites));
  double reach = 0.0;
  for (std::int64_t x = 0; x < sites; ++x) {
    const double w = phi_grid[x] * scale;
    const double p = rho_grid[x];
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument("exact_initial_expectation: density outside [0,1]");
    }
    up[static_cast<std::size_t>(x)] = w * (1.0 - p);
    down[static_cast<std::size_t>(x)] = -w * p;
    prob[static_cast<std::size_t>(x)] = p;
    reach += std::max(std::abs(w * (1.0 - p)), std::abs(w * p));
  }

  // Linear mass splitting onto the grid preserves each atom's mean and costs
  // at most h^2/8 * sup|f''| per site for C^2 functions.
  const ScalarFunction& f = obs.function();
  const double curvature = std::max(f.derivative_bound(2, reach + 1.0), 1e-12);
  const double h_needed =
      std::sqrt(8.0 * tolerance / (static_cast<double>(sites) * curvature));
  const std::int64_t steps =
      std::max<std::int64_t>(static_cast<std::int64_t>(std::ceil(reach / h_needed)), 4);
  // Each splitting step can push one slot past the continuous support, so the
  // margin must cover one slot per site on top of the exact reach.
  const std::int64_t half = steps + sites + 2;
  if (half > kGridHalfCap) {
    throw std::invalid_argument(
        "exact_initial_expectation: tolerance needs a finer grid than the cap allows");
  }
  const double h = reach > 0.0 ? reach / static_cast<double>(steps) : 1.0;
  const std::int64_t points = 2 * half + 1;

  std::vector<double> dist(static_cast<std::size_t>(points), 0.0);
  std::vector<double> next(static_cast<std::size_t>(points), 0.0);
  dist[static_cast<std::size_t>(half)] = 1.0;

  auto deposit = [&](std::vector<double>& target, double position, double mass) {
    if (mass == 0.0) return;
    const double slot = position / h + static_cast<double>(half);
    const std::int64_t lo = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::floor(slot)), 0, points - 2);
    const double frac = slot - static_cast<double>(lo);
    target[static_cast<std::size_t>(lo)] += mass * (1.0 - frac);
    target[static_cast<std::size_t>(lo + 1)] += mass * frac;
  };

  for (std::int64_t x = 0; x < sites; ++x) {
    std::fill(next.begin(), next.end(), 0.0);
    const double a = up[static_cast<std::size_t>(x)];
    const double b = down[static_cast<std::size_t>(x)];
    const double p = prob[static_cast<std::size_t>(x)];
    for (std::int64_t i = 0; i < points; ++i) {
      const double mass = dist[static_cast<std::size_t>(i)];
      if (mass == 0.0) continue;
      const double y = (static_cast<double>(i) - static_cast<double>(half)) * h;
      deposit(next, y + a, mass * p);
      deposit(next, y + b, mass * (1.0 - p));
    }
    dist.swap(next);
  }

  double acc = 0.0;
  double comp = 0.0;
  for (std::int64_t i = 0; i < points; ++i) {
    const double y = (static_cast<double>(i) - static_cast<double>(half)) * h;
    const double term = dist[static_cast<std::size_t>(i)] * f(y);
    const double corrected = term - comp;
    const double sum = acc + corrected;
    comp = (sum - acc) - corrected;
    acc = sum;
  }
  return acc;
}

}  // namespace sseplab
