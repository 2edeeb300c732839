#pragma once

#include <string>
#include <vector>

#include "sseplab/harness/experiment.hpp"

namespace sseplab {

struct DiagnosticCheck {
  std::string name;
  bool pass = false;
  bool skipped = false;
  double value = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct DiagnosticsReport {
  std::vector<DiagnosticCheck> checks;

  bool all_pass() const {
    for (const DiagnosticCheck& c : checks) {
      if (!c.skipped && !c.pass) return false;
    }
    return true;
  }
};

/// Machine-checkable pass/fail battery over the identity, bound, and
/// consistency properties of the operator calculus, the particle simulator,
/// and the Gaussian law: duality and summation by parts, eigenvalue bounds,
/// interpolation and Laplacian convergence fits over cfg.n_list (skipped
/// below three ladder entries), generator expansion residual, equilibrium
/// stationarity under cfg.noise_prefactor, two-point positive
/// semidefiniteness, Sobolev-norm and pairing bounds for cfg.rho0, noise
/// covariance quadrature and growth checks, and simulator-vs-master-equation
/// agreement.
DiagnosticsReport diagnostics_suite(const ExperimentConfig& cfg);

/// One line per check: "[PASS]"/"[FAIL]"/"[SKIP]", name, value vs bound, and
/// the detail note.
std::string diagnostics_text(const DiagnosticsReport& report);

}  // namespace sseplab
