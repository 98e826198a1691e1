#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qdirac/dirac.hpp"
#include "qdirac/potential.hpp"
#include "qdirac/stepsolve.hpp"

namespace qdirac::oracle {

/// Outcome of one analytic-vs-numeric comparison.
struct OracleReport {
  std::string check;
  Complex analytic{0.0, 0.0};
  Complex oracle{0.0, 0.0};
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Roots of det[M_plus M_minus - |W0|^2] = 0 as a polynomial in s = Q^2,
/// obtained by interpolating the 4x4 determinant (a perfect square of a
/// quadratic in s) and solving the quadratic. Returned sorted ascending,
/// i.e. (Q_minus^2, Q_plus^2). Never evaluates the closed-form momenta.
std::pair<double, double> det_roots_Qsq(const Kinematics& k,
                                        const StepPotential& pot);

/// Spinor coefficients for one branch recovered numerically: null space of
/// the literal matrix product minus |W0|^2, chi component normalized to 1,
/// M and N read off through the coupled-equation map.
struct NullspaceCoeffs {
  Complex A{0.0, 0.0};
  Complex M{0.0, 0.0};
  Complex N{0.0, 0.0};
};

NullspaceCoeffs nullspace_coeffs(const Kinematics& k, const StepPotential& pot,
                                 Branch branch);

/// Group velocity from a central finite difference of Q_pm(E), inverted.
/// Errors if the stencil leaves the oscillating zone. With richardson the
/// h and h/2 stencils are combined to fourth order.
double fd_velocity(const Kinematics& k, const StepPotential& pot, Branch branch,
                   double h = 1e-5, bool richardson = false);

/// |apply_dirac(psi)| / |psi|; a value below tolerance certifies a solution.
double residual_norm(const QSpinor& psi, Complex Q, const Kinematics& k,
                     const StepPotential& pot);

enum class FaultInjection { none, flip_delta_sign };

struct SuiteOptions {
  std::uint64_t seed = 1;
  int n_points = 1000;
  FaultInjection fault = FaultInjection::none;
};

struct SuiteResult {
  std::uint64_t seed = 0;
  int n_points = 0;
  FaultInjection fault = FaultInjection::none;
  std::vector<OracleReport> reports;

  bool all_pass() const;
  std::vector<const OracleReport*> failures() const;
};

/// Full verification run: seeded random points spanning all three zones
/// plus fixed limit checks. Deterministic for a fixed seed; points are
/// evaluated in parallel and aggregated in order.
SuiteResult run_suite(const SuiteOptions& opts);

nlohmann::json to_json(const OracleReport& report);
nlohmann::json to_json(const SuiteResult& result);

}  // namespace qdirac::oracle
