#include "sseplab/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sseplab {

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::kMonteCarlo: return "monte_carlo";
    case Engine::kExactTwoPoint: return "exact_two_point";
    case Engine::kExactEnumeration: return "exact_enumeration";
  }
  return "unknown";
}

std::string observable_label(const Observable& obs) {
  switch (obs.kind()) {
    case ObservableKind::kLinear:
      return "linear";
    case ObservableKind::kSmooth:
      return "smooth:" + obs.function().name() + ":" + std::to_string(obs.fields().size());
    case ObservableKind::kQuadratic:
      return "quadratic";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (dim != rho0.field().dim() || dim != observable.dim()) {
    throw std::invalid_argument("ExperimentConfig: dimension mismatch");
  }
  if (n_list.empty()) throw std::invalid_argument("ExperimentConfig: empty n ladder");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw std::invalid_argument("ExperimentConfig: n must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      throw std::invalid_argument("ExperimentConfig: n ladder must be strictly increasing");
    }
  }
  if (t < 0.0) throw std::invalid_argument("ExperimentConfig: negative time");
  if (replicas < 1) throw std::invalid_argument("ExperimentConfig: replicas must be >= 1");
  if (noise_prefactor <= 0.0) {
    throw std::invalid_argument("ExperimentConfig: noise prefactor must be positive");
  }
  if (truncation < 0) throw std::invalid_argument("ExperimentConfig: negative truncation");
  if (threads < 1) throw std::invalid_argument("ExperimentConfig: threads must be >= 1");
}

int ExperimentConfig::band_for(int n) const {
  return truncation > 0 ? std::min(n, truncation) : n;
}

ErrorTable assemble_error_table(const std::vector<int>& n_list,
                                const std::vector<double>& particle_values,
                                const std::vector<double>& particle_stderrs,
                                const std::vector<double>& gaussian_values) {
  if (particle_values.size() != n_list.size() || particle_stderrs.size() != n_list.size() ||
      gaussian_values.size() != n_list.size()) {
    throw std::invalid_argument("assemble_error_table: column lengths differ");
  }
  ErrorTable table;
  table.rows.reserve(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    ErrorRow row;
    row.n = n_list[i];
    row.particle_value = particle_values[i];
    row.particle_stderr = particle_stderrs[i];
    row.gaussian_value = gaussian_values[i];
    row.abs_error = std::abs(particle_values[i] - gaussian_values[i]);
    table.rows.push_back(row);
  }
  return table;
}

RateFit fit_rate(const ErrorTable& table) {
  const std::size_t m = table.rows.size();
  if (m < 3) throw std::invalid_argument("fit_rate: need at least 3 rows");
  std::ostringstream bad;
  for (const ErrorRow& row : table.rows) {
    if (row.abs_error <= 0.0) {
      bad << " [n=" << row.n << ": abs_error is zero]";
    } else if (row.abs_error <= 10.0 * row.particle_stderr) {
      bad << " [n=" << row.n << ": abs_error " << row.abs_error
          << " within 10x stderr " << row.particle_stderr << "]";
    }
  }
  if (!bad.str().empty()) {
    throw std::invalid_argument("fit_rate: noise-dominated rows:" + bad.str());
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const ErrorRow& row : table.rows) {
    const double x = std::log(static_cast<double>(row.n));
    const double y = std::log(row.abs_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dm = static_cast<double>(m);
  const double sxx_centered = sxx - sx * sx / dm;
  RateFit fit;
  fit.slope = (sxy - sx * sy / dm) / sxx_centered;
  fit.intercept = (sy - fit.slope * sx) / dm;

  double ssr = 0.0, sst = 0.0;
  const double ybar = sy / dm;
  for (const ErrorRow& row : table.rows) {
    const double x = std::log(static_cast<double>(row.n));
    const double y = std::log(row.abs_error);
    const double resid = y - (fit.intercept + fit.slope * x);
    ssr += resid * resid;
    sst += (y - ybar) * (y - ybar);
  }
  fit.slope_stderr = m > 2 ? std::sqrt(ssr / (dm - 2.0) / sxx_centered) : 0.0;
  fit.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
  return fit;
}

std::string format_float17(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string error_table_csv(const ErrorTable& table, double t,
                            const std::string& observable, const std::string& engine) {
  std::string out =
      "n,t,observable,engine,particle_value,particle_stderr,gaussian_value,abs_error\n";
  for (const ErrorRow& row : table.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += format_float17(t);
    out += ',';
    out += observable;
    out += ',';
    out += engine;
    out += ',';
    out += format_float17(row.particle_value);
    out += ',';
    out += format_float17(row.particle_stderr);
    out += ',';
    out += format_float17(row.gaussian_value);
    out += ',';
    out += format_float17(row.abs_error);
    out += '\n';
  }
  return out;
}

}  // namespace sseplab
