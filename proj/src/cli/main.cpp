#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sseplab/cli/run.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("SSEPLAB_OUT_DIR");
  return env && *env ? env : ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exclusion-process fluctuation laboratory: particle simulations "
               "against the exact Gaussian limit law"};
  app.require_subcommand(1);

  sseplab::CliOptions opts;
  opts.out_dir = default_out_dir();

  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "sample one particle trajectory and write field snapshots"},
      {"verify-rate", "error ladder + rate fit for a particle-vs-Gaussian observable"},
      {"berry-esseen", "time-zero smooth-observable error ladder (exact convolution)"},
      {"diagnostics", "operator identities, bounds, and consistency checks"},
      {"covariance", "export the closed-form noise covariance matrix"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", opts.config_path, "experiment config file")
        ->required();
    sub->add_option("--out-dir", opts.out_dir,
                    "artifact directory (default: $SSEPLAB_OUT_DIR or '.')");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { opts.seed = v; }, "master seed override");
    sub->add_option_function<int>(
        "--threads", [&](int v) { opts.threads = v; }, "worker thread override");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sseplab::kExitConfigError;
  }

  return sseplab::run_command(app.get_subcommands().front()->get_name(), opts);
}
