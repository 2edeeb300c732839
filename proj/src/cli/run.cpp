#include "sseplab/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "sseplab/harness/curves.hpp"
#include "sseplab/harness/diagnostics.hpp"
#include "sseplab/harness/engines.hpp"
#include "sseplab/ou/covariance.hpp"
#include "sseplab/ssep/simulator.hpp"
#include "sseplab/torus/operators.hpp"

#ifndef SSEPLAB_VERSION
#define SSEPLAB_VERSION "0.0.0"
#endif

namespace sseplab {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kToolVersion = SSEPLAB_VERSION;

ConfigError entry_error(const ConfigEntry& e, const std::string& message) {
  return ConfigError("line " + std::to_string(e.line) + ": key '" + e.key + "': " +
                     message);
}

int require_dim(const ConfigFile& file) {
  const std::int64_t dim = file.require_int("experiment", "dim");
  if (dim != 1 && dim != 2) {
    throw ConfigError(file.name() + ": [experiment] dim must be 1 or 2");
  }
  return static_cast<int>(dim);
}

ModeIndex mode_from_tokens(const std::vector<std::string>& tokens, std::size_t offset,
                           int dim, const ConfigEntry& e) {
  ModeIndex k{0, 0};
  for (int j = 0; j < dim; ++j) {
    k[static_cast<std::size_t>(j)] =
        static_cast<int>(parse_int_token(tokens[offset + static_cast<std::size_t>(j)], e));
  }
  return k;
}

int linf(const ModeIndex& k) { return std::max(std::abs(k[0]), std::abs(k[1])); }

BandLimitedProfile profile_from_config(const ConfigFile& file, int dim) {
  const double base = file.require_double("rho0", "base");
  const std::vector<const ConfigEntry*> lines = file.repeated("rho0", "mode");

  int K = 1;
  for (const ConfigEntry* e : lines) {
    const std::vector<std::string> tokens = split_tokens(e->value);
    if (tokens.size() != static_cast<std::size_t>(dim) + 2) {
      throw entry_error(*e, "expected '" + std::string(dim == 1 ? "k" : "k1 k2") +
                                " amplitude phase'");
    }
    K = std::max(K, linf(mode_from_tokens(tokens, 0, dim, *e)));
  }

  SpectralField coeffs(dim, K);
  coeffs.set_coeff(ModeIndex{0, 0}, {base, 0.0});
  for (const ConfigEntry* e : lines) {
    const std::vector<std::string> tokens = split_tokens(e->value);
    const ModeIndex k = mode_from_tokens(tokens, 0, dim, *e);
    if (k == ModeIndex{0, 0}) {
      throw entry_error(*e, "the zero mode belongs in 'base'");
    }
    const double amp = parse_double_token(tokens[static_cast<std::size_t>(dim)], *e);
    const double phase = parse_double_token(tokens[static_cast<std::size_t>(dim) + 1], *e);
    // amplitude*cos(k.x + phase) splits into c_k and c_{-k} = conj(c_k).
    const std::complex<double> c = 0.5 * amp * std::polar(1.0, phase);
    const ModeIndex minus{-k[0], -k[1]};
    coeffs.set_coeff(k, coeffs.coeff(k) + c);
    coeffs.set_coeff(minus, coeffs.coeff(minus) + std::conj(c));
  }
  try {
    return BandLimitedProfile(std::move(coeffs));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(file.name() + ": [rho0] " + err.what());
  }
}

SpectralField field_from_entry(const ConfigEntry& e, int dim) {
  const std::vector<std::string> tokens = split_tokens(e.value);
  if (tokens.empty()) throw entry_error(e, "empty field");
  const std::string& kind = tokens.front();

  if (kind == "constant") {
    if (tokens.size() != 2) throw entry_error(e, "expected 'constant value'");
    SpectralField f(dim, 1);
    f.set_coeff(ModeIndex{0, 0}, {parse_double_token(tokens[1], e), 0.0});
    return f;
  }
  if (kind == "sqrt2cos" || kind == "sqrt2sin") {
    if (tokens.size() != static_cast<std::size_t>(dim) + 1) {
      throw entry_error(e, "expected '" + kind + (dim == 1 ? " k'" : " k1 k2'"));
    }
    const ModeIndex k = mode_from_tokens(tokens, 1, dim, e);
    if (k == ModeIndex{0, 0}) throw entry_error(e, "needs a nonzero mode");
    SpectralField f(dim, std::max(linf(k), 1));
    const std::complex<double> c = kind == "sqrt2cos"
                                       ? std::complex<double>{std::sqrt(0.5), 0.0}
                                       : std::complex<double>{0.0, -std::sqrt(0.5)};
    f.set_coeff(k, c);
    f.set_coeff(ModeIndex{-k[0], -k[1]}, std::conj(c));
    return f;
  }
  if (kind == "mode") {
    if (tokens.size() != static_cast<std::size_t>(dim) + 3) {
      throw entry_error(e, "expected 'mode " +
                               std::string(dim == 1 ? "k" : "k1 k2") + " re im'");
    }
    const ModeIndex k = mode_from_tokens(tokens, 1, dim, e);
    const std::complex<double> c{
        parse_double_token(tokens[static_cast<std::size_t>(dim) + 1], e),
        parse_double_token(tokens[static_cast<std::size_t>(dim) + 2], e)};
    SpectralField f(dim, std::max(linf(k), 1));
    f.set_coeff(k, c);
    if (!(k == ModeIndex{0, 0})) f.set_coeff(ModeIndex{-k[0], -k[1]}, std::conj(c));
    return f;
  }
  throw entry_error(e, "unknown field catalog name '" + kind +
                           "' (constant | sqrt2cos | sqrt2sin | mode)");
}

ScalarFunction function_from_config(const ConfigFile& file) {
  const ConfigEntry& e = file.require("observable", "function");
  const std::vector<std::string> tokens = split_tokens(e.value);
  const std::string& name = tokens.front();
  if (name == "identity" && tokens.size() == 1) return ScalarFunction::identity();
  if (name == "square" && tokens.size() == 1) return ScalarFunction::square();
  if (name == "cos" && tokens.size() == 1) return ScalarFunction::cosine();
  if (name == "exp_clip" && tokens.size() == 1) return ScalarFunction::exp_clip();
  if (name == "poly" && tokens.size() >= 2) {
    std::vector<double> coeffs;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      coeffs.push_back(parse_double_token(tokens[i], e));
    }
    try {
      return ScalarFunction::polynomial(coeffs);
    } catch (const std::invalid_argument& err) {
      throw entry_error(e, err.what());
    }
  }
  throw entry_error(e, "unknown function '" + e.value +
                           "' (identity | square | cos | exp_clip | poly c0 c1 ...)");
}

Observable observable_from_config(const ConfigFile& file, int dim) {
  const std::string kind = file.require("observable", "kind").value;
  try {
    if (kind == "linear") {
      const std::vector<const ConfigEntry*> fields = file.repeated("observable", "field");
      if (fields.size() != 1) {
        throw ConfigError(file.name() + ": [observable] linear needs exactly one field");
      }
      return Observable::linear(field_from_entry(*fields.front(), dim));
    }
    if (kind == "smooth") {
      std::vector<SpectralField> fields;
      for (const ConfigEntry* e : file.repeated("observable", "field")) {
        fields.push_back(field_from_entry(*e, dim));
      }
      if (fields.empty()) {
        throw ConfigError(file.name() + ": [observable] smooth needs field lines");
      }
      return Observable::smooth(function_from_config(file), std::move(fields));
    }
    if (kind == "quadratic") {
      const int band = static_cast<int>(file.require_int("observable", "band"));
      if (band < 1) throw ConfigError(file.name() + ": [observable] band must be >= 1");
      BilinearForm a(dim, band);
      a.entries().setZero();
      const std::vector<const ConfigEntry*> entries = file.repeated("observable", "entry");
      if (entries.empty()) {
        throw ConfigError(file.name() + ": [observable] quadratic needs entry lines");
      }
      for (const ConfigEntry* e : entries) {
        const std::vector<std::string> tokens = split_tokens(e->value);
        if (tokens.size() != 3) throw entry_error(*e, "expected 'i j value'");
        const std::int64_t i = parse_int_token(tokens[0], *e);
        const std::int64_t j = parse_int_token(tokens[1], *e);
        if (i < 0 || j < 0 || i >= a.basis().size() || j >= a.basis().size()) {
          throw entry_error(*e, "index outside the band's real basis");
        }
        const double v = parse_double_token(tokens[2], *e);
        a.entries()(i, j) = v;
        a.entries()(j, i) = v;
      }
      return Observable::quadratic(std::move(a));
    }
  } catch (const std::invalid_argument& err) {
    throw ConfigError(file.name() + ": [observable] " + err.what());
  }
  throw ConfigError(file.name() + ": [observable] unknown kind '" + kind +
                    "' (linear | smooth | quadratic)");
}

double prefactor_from_config(const ConfigFile& file) {
  const std::string token = file.value_or("experiment", "noise_prefactor", "4pi^2");
  if (token == "4pi^2") return kNoisePrefactorFourPiSq;
  if (token == "2pi^2") return kNoisePrefactorTwoPiSq;
  ConfigEntry fake{"experiment", "noise_prefactor", token, 0};
  const ConfigEntry& e =
      file.has("experiment", "noise_prefactor") ? file.require("experiment", "noise_prefactor") : fake;
  return parse_double_token(token, e);
}

Engine engine_from_config(const ConfigFile& file) {
  const std::string token = file.value_or("experiment", "engine", "exact_two_point");
  if (token == "monte_carlo") return Engine::kMonteCarlo;
  if (token == "exact_two_point") return Engine::kExactTwoPoint;
  if (token == "exact_enumeration") return Engine::kExactEnumeration;
  throw ConfigError(file.name() + ": [experiment] unknown engine '" + token +
                    "' (monte_carlo | exact_two_point | exact_enumeration)");
}

std::string hash_string(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string iso_utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_comment(const std::string& command, const ConfigFile& file,
                             std::uint64_t seed) {
  std::string out;
  out += "# sseplab " + std::string(kToolVersion) + "\n";
  out += "# command " + command + "\n";
  out += "# config_hash " + hash_string(file.canonical_hash()) + "\n";
  out += "# master_seed " + std::to_string(seed) + "\n";
  return out;
}

void write_text(const std::string& dir, const std::string& filename,
                const std::string& content) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = std::filesystem::path(dir) / filename;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

ordered_json json_header(const std::string& command, const ConfigFile& file,
                         std::uint64_t seed) {
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["config_hash"] = hash_string(file.canonical_hash());
  j["master_seed"] = seed;
  return j;
}

void write_manifest(const std::string& dir, const std::string& command,
                    const ConfigFile& file, std::uint64_t seed,
                    const ordered_json& criteria) {
  ordered_json m = json_header(command, file, seed);
  m["wall_clock_utc"] = iso_utc_now();
  m["criteria"] = criteria;
  write_text(dir, "manifest.json", m.dump(2) + "\n");
}

void apply_overrides(ExperimentConfig& cfg, const CliOptions& opts) {
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (opts.threads) cfg.threads = *opts.threads;
}

/// L-infinity reach of the observable's spectral content; the Gaussian side
/// resolves the observable exactly iff this fits inside band_for(n) at the
/// smallest ladder entry.
int observable_max_mode(const Observable& obs) {
  if (obs.kind() == ObservableKind::kQuadratic) return obs.form().basis().truncation();
  int worst = 0;
  for (const SpectralField& f : obs.fields()) {
    for (std::int64_t i = 0; i < f.size(); ++i) {
      const ModeIndex k = f.mode_at(i);
      if (std::abs(f.coeff(k)) > 0.0) worst = std::max(worst, linf(k));
    }
  }
  return worst;
}

bool rows_positive(const ErrorTable& table) {
  return std::all_of(table.rows.begin(), table.rows.end(),
                     [](const ErrorRow& r) { return r.abs_error > 0.0; });
}

bool rows_decreasing(const ErrorTable& table) {
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (!(table.rows[i].abs_error < table.rows[i - 1].abs_error)) return false;
  }
  return true;
}

ordered_json rows_json(const ErrorTable& table) {
  ordered_json rows = ordered_json::array();
  for (const ErrorRow& r : table.rows) {
    ordered_json row;
    row["n"] = r.n;
    row["particle_value"] = r.particle_value;
    row["particle_stderr"] = r.particle_stderr;
    row["gaussian_value"] = r.gaussian_value;
    row["abs_error"] = r.abs_error;
    rows.push_back(std::move(row));
  }
  return rows;
}

bool criteria_pass(const ordered_json& criteria) {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const ordered_json& v) { return v.is_boolean() && v.get<bool>(); });
}

}  // namespace

ExperimentConfig experiment_from_config(const ConfigFile& file) {
  const int dim = require_dim(file);
  BandLimitedProfile rho = profile_from_config(file, dim);
  Observable obs = observable_from_config(file, dim);
  ExperimentConfig cfg(std::move(rho), std::move(obs));
  cfg.n_list = file.require_int_list("experiment", "n_list");
  cfg.t = file.double_or("experiment", "t", 0.1);
  cfg.replicas = file.int_or("experiment", "replicas", 10000);
  cfg.master_seed = static_cast<std::uint64_t>(file.int_or("experiment", "seed", 1));
  cfg.threads = static_cast<int>(file.int_or("experiment", "threads", 1));
  cfg.truncation = static_cast<int>(file.int_or("experiment", "truncation", 0));
  cfg.noise_prefactor = prefactor_from_config(file);
  cfg.engine = engine_from_config(file);
  const std::string zeta0 = file.value_or("experiment", "zeta0", "matched");
  if (zeta0 == "matched") {
    cfg.zeta0_mode = InitialFieldMode::kMatchedGaussian;
  } else if (zeta0 == "zero") {
    cfg.zeta0_mode = InitialFieldMode::kDeterministicZero;
  } else {
    throw ConfigError(file.name() + ": [experiment] unknown zeta0 '" + zeta0 +
                      "' (matched | zero)");
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(file.name() + ": " + err.what());
  }
  return cfg;
}

int cmd_simulate(const ConfigFile& file, const CliOptions& opts) {
  const int dim = require_dim(file);
  BandLimitedProfile rho = profile_from_config(file, dim);
  const int n = static_cast<int>(file.require_int("simulate", "n"));
  if (n < 1) throw ConfigError(file.name() + ": [simulate] n must be >= 1");
  const double t_default = file.double_or("experiment", "t", 0.0);
  std::vector<double> times = file.double_list_or("simulate", "times", {t_default});
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw ConfigError(file.name() +
                        ": [simulate] times must be nonnegative and nondecreasing");
    }
  }
  const std::uint64_t seed = opts.seed ? *opts.seed
                                       : static_cast<std::uint64_t>(
                                             file.int_or("experiment", "seed", 1));

  const GridField rho_grid = project(rho.field(), n);
  Rng rng = replica_stream(seed, 0);
  Configuration eta = sample_initial(rho_grid, rng);
  SimClock clock;

  std::string csv = manifest_comment("simulate", file, seed);
  csv += "time,site,occupancy,mean_density,fluctuation\n";
  for (double time : times) {
    simulate(eta, clock, time, rng);
    const GridField rho_t = mean_field(rho_grid, time);
    const GridField zeta = fluctuation_field(eta, rho_t);
    for (std::int64_t i = 0; i < rho_grid.torus().sites(); ++i) {
      csv += format_float17(time);
      csv += ',' + std::to_string(i);
      csv += ',' + std::to_string(eta.get(i) ? 1 : 0);
      csv += ',' + format_float17(rho_t[i]);
      csv += ',' + format_float17(zeta[i]);
      csv += '\n';
    }
  }
  write_text(opts.out_dir, "snapshots.csv", csv);
  write_manifest(opts.out_dir, "simulate", file, seed, ordered_json::object());
  return kExitPass;
}

int cmd_verify_rate(const ConfigFile& file, const CliOptions& opts) {
  ExperimentConfig cfg = experiment_from_config(file);
  apply_overrides(cfg, opts);
  const double gate = file.double_or("experiment", "slope_gate", -0.45);

  ErrorTable table = error_curve(cfg);
  const std::string label = observable_label(cfg.observable);
  std::string csv = manifest_comment("verify-rate", file, cfg.master_seed);
  csv += error_table_csv(table, cfg.t, label, engine_name(cfg.engine));
  write_text(opts.out_dir, "error_table.csv", csv);

  RateFit fit;
  try {
    fit = fit_rate(table);
  } catch (const std::invalid_argument& err) {
    const std::string what = err.what();
    if (what.find("noise-dominated") != std::string::npos) {
      throw std::runtime_error("insufficient replicas — " + what);
    }
    throw;
  }

  const bool band_resolved = observable_max_mode(cfg.observable) <=
                             cfg.band_for(cfg.n_list.front());
  double min_error = table.rows.front().abs_error;
  for (const ErrorRow& r : table.rows) min_error = std::min(min_error, r.abs_error);

  ordered_json criteria;
  criteria["positive_errors"] = rows_positive(table);
  if (cfg.engine != Engine::kMonteCarlo) {
    criteria["monotone_decreasing"] = rows_decreasing(table);
  }
  criteria["slope_gate"] = fit.slope <= gate;
  // Band-limited observables inside the resolvable band have exactly zero
  // Gaussian truncation tail; anything else cannot be certified.
  criteria["truncation_tail_certified"] = band_resolved;

  ordered_json summary = json_header("verify-rate", file, cfg.master_seed);
  summary["observable"] = label;
  summary["engine"] = engine_name(cfg.engine);
  summary["slope"] = fit.slope;
  summary["slope_stderr"] = fit.slope_stderr;
  summary["slope_ci_95"] =
      ordered_json::array({fit.slope - 2.0 * fit.slope_stderr,
                           fit.slope + 2.0 * fit.slope_stderr});
  summary["intercept"] = fit.intercept;
  summary["r_squared"] = fit.r_squared;
  summary["slope_gate"] = gate;
  summary["truncation_tail_bound"] =
      band_resolved ? ordered_json(0.0) : ordered_json(nullptr);
  summary["min_abs_error"] = min_error;
  summary["criteria"] = criteria;
  summary["rows"] = rows_json(table);
  write_text(opts.out_dir, "rate_fit.json", summary.dump(2) + "\n");

  write_manifest(opts.out_dir, "verify-rate", file, cfg.master_seed, criteria);
  return criteria_pass(criteria) ? kExitPass : kExitCriterionFail;
}

int cmd_berry_esseen(const ConfigFile& file, const CliOptions& opts) {
  ExperimentConfig cfg = experiment_from_config(file);
  apply_overrides(cfg, opts);
  const double gate = file.double_or("experiment", "slope_gate", -0.45);

  BerryEsseenResult result = berry_esseen_curve(cfg);
  const std::string label = observable_label(cfg.observable);
  std::string csv = manifest_comment("berry-esseen", file, cfg.master_seed);
  csv += error_table_csv(result.table, 0.0, label, "exact_convolution");
  write_text(opts.out_dir, "error_table.csv", csv);

  double max_error = 0.0;
  for (const ErrorRow& r : result.table.rows) max_error = std::max(max_error, r.abs_error);

  ordered_json criteria;
  if (result.fit.has_value()) {
    criteria["positive_errors"] = rows_positive(result.table);
    criteria["monotone_decreasing"] = rows_decreasing(result.table);
    criteria["slope_gate"] = result.fit->slope <= gate;
  } else {
    // No fit means some row matched the Gaussian moment exactly (polynomial
    // observables at equilibrium) or the ladder is too short for a slope.
    criteria["exact_match"] = max_error <= 1e-10;
  }

  ordered_json summary = json_header("berry-esseen", file, cfg.master_seed);
  summary["observable"] = label;
  summary["slope_gate"] = gate;
  if (result.fit.has_value()) {
    summary["slope"] = result.fit->slope;
    summary["slope_stderr"] = result.fit->slope_stderr;
    summary["r_squared"] = result.fit->r_squared;
  } else {
    summary["slope"] = nullptr;
    summary["max_abs_error"] = max_error;
  }
  summary["criteria"] = criteria;
  summary["rows"] = rows_json(result.table);
  write_text(opts.out_dir, "rate_fit.json", summary.dump(2) + "\n");

  write_manifest(opts.out_dir, "berry-esseen", file, cfg.master_seed, criteria);
  return criteria_pass(criteria) ? kExitPass : kExitCriterionFail;
}

int cmd_diagnostics(const ConfigFile& file, const CliOptions& opts) {
  ExperimentConfig cfg = experiment_from_config(file);
  apply_overrides(cfg, opts);

  DiagnosticsReport report = diagnostics_suite(cfg);
  std::string text = manifest_comment("diagnostics", file, cfg.master_seed);
  text += diagnostics_text(report);
  write_text(opts.out_dir, "diagnostics.txt", text);

  ordered_json checks = ordered_json::array();
  ordered_json criteria;
  for (const DiagnosticCheck& c : report.checks) {
    ordered_json entry;
    entry["name"] = c.name;
    entry["pass"] = c.pass;
    entry["skipped"] = c.skipped;
    entry["value"] = c.value;
    entry["bound"] = c.bound;
    entry["detail"] = c.detail;
    checks.push_back(std::move(entry));
    if (!c.skipped) criteria[c.name] = c.pass;
  }
  ordered_json summary = json_header("diagnostics", file, cfg.master_seed);
  summary["all_pass"] = report.all_pass();
  summary["checks"] = checks;
  write_text(opts.out_dir, "diagnostics.json", summary.dump(2) + "\n");

  write_manifest(opts.out_dir, "diagnostics", file, cfg.master_seed, criteria);
  return report.all_pass() ? kExitPass : kExitCriterionFail;
}

int cmd_covariance(const ConfigFile& file, const CliOptions& opts) {
  const int dim = require_dim(file);
  BandLimitedProfile rho = profile_from_config(file, dim);
  const double t = file.double_or("experiment", "t", 0.1);
  if (t < 0.0) throw ConfigError(file.name() + ": [experiment] negative time");
  const double prefactor = prefactor_from_config(file);
  const int band = static_cast<int>(file.int_or("covariance", "band", 3));
  if (band < 1 || band > 16) {
    throw ConfigError(file.name() + ": [covariance] band must be in 1..16");
  }
  const std::uint64_t seed = opts.seed ? *opts.seed
                                       : static_cast<std::uint64_t>(
                                             file.int_or("experiment", "seed", 1));

  const Eigen::MatrixXd v = covariance_V(rho, t, band, prefactor);
  RealModeBasis basis(dim, band);

  auto trig_name = [](Trig trig) {
    switch (trig) {
      case Trig::constant: return "constant";
      case Trig::cosine: return "cos";
      case Trig::sine: return "sin";
    }
    return "unknown";
  };

  std::string csv = manifest_comment("covariance", file, seed);
  csv += "a,b,ka1,ka2,trig_a,kb1,kb2,trig_b,value\n";
  for (int a = 0; a < basis.size(); ++a) {
    for (int b = 0; b < basis.size(); ++b) {
      const RealMode& ma = basis.mode(a);
      const RealMode& mb = basis.mode(b);
      csv += std::to_string(a) + ',' + std::to_string(b);
      csv += ',' + std::to_string(ma.k[0]) + ',' + std::to_string(ma.k[1]);
      csv += ',';
      csv += trig_name(ma.trig);
      csv += ',' + std::to_string(mb.k[0]) + ',' + std::to_string(mb.k[1]);
      csv += ',';
      csv += trig_name(mb.trig);
      csv += ',' + format_float17(v(a, b));
      csv += '\n';
    }
  }
  write_text(opts.out_dir, "covariance.csv", csv);
  write_manifest(opts.out_dir, "covariance", file, seed, ordered_json::object());
  return kExitPass;
}

int run_command(const std::string& command, const CliOptions& opts) {
  ConfigFile file;
  try {
    file = ConfigFile::parse_file(opts.config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  try {
    if (command == "simulate") return cmd_simulate(file, opts);
    if (command == "verify-rate") return cmd_verify_rate(file, opts);
    if (command == "berry-esseen") return cmd_berry_esseen(file, opts);
    if (command == "diagnostics") return cmd_diagnostics(file, opts);
    if (command == "covariance") return cmd_covariance(file, opts);
    std::cerr << "config error: unknown command '" << command << "'\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kExitPrecondition;
  }
}

}  // namespace sseplab
