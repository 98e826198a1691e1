#pragma once

#include <complex>

#include "qdirac/dirac.hpp"
#include "qdirac/errors.hpp"
#include "qdirac/potential.hpp"

namespace qdirac {

enum class Branch { plus, minus };
enum class Spin { up, down };
enum class Zone { diffusion, evanescent, klein, boundary };

constexpr const char* zone_letter(Zone z) {
  switch (z) {
    case Zone::diffusion: return "D";
    case Zone::evanescent: return "E";
    case Zone::klein: return "K";
    case Zone::boundary: return "B";
  }
  return "?";
}

constexpr int zone_code(Zone z) {
  switch (z) {
    case Zone::diffusion: return 0;
    case Zone::evanescent: return 1;
    case Zone::klein: return 2;
    case Zone::boundary: return 3;
  }
  return -1;
}

/// Momenta in the potential region for one kinematic point.
/// Q_plus_sq > 0 always; Q_minus_sq changes sign across the energy zones.
/// Roots: Q_plus = +sqrt(Q_plus_sq); Q_minus is the non-negative real root
/// when Q_minus_sq >= 0 and +i sqrt(-Q_minus_sq) otherwise, so that
/// exp(i Q_minus z) decays for z > 0.
struct Momenta {
  double q_minus_sq = 0.0;
  double q_plus_sq = 0.0;
  double delta = 0.0;
  double Q_minus_sq = 0.0;
  double Q_plus_sq = 0.0;
  Complex Q_minus{0.0, 0.0};
  Complex Q_plus{0.0, 0.0};
};

/// Energy-zone label together with the zone boundaries
///   lower = max(m, sqrt(|W0|^2 + (V0 - m)^2)),
///   upper = sqrt(|W0|^2 + (V0 + m)^2).
struct ZoneClassification {
  Zone zone = Zone::diffusion;
  double lower = 0.0;
  double upper = 0.0;
};

struct SpinorCoefficients {
  Complex A_minus, A_plus;
  Complex M_minus, M_plus;
  Complex N_minus, N_plus;
};

/// delta = sqrt(E^2 V0^2 + p^2 |W0|^2) - E V0 >= 0, evaluated in the
/// cancellation-free conjugate form p^2 |W0|^2 / (sqrt(...) + E V0).
double delta(const Kinematics& k, const StepPotential& pot);

/// Q_pm^2 = q_pm^2 + |W0|^2 +/- 2 delta with q_pm^2 = (E +/- V0)^2 - m^2.
Momenta momenta(const Kinematics& k, const StepPotential& pot);

/// D: E > upper; E: lower < E < upper; K: m < E < lower. Energies within
/// a relative tolerance of either boundary are reported as Boundary.
ZoneClassification classify_zone(const Kinematics& k, const StepPotential& pot,
                                 double tol = 1e-9);

/// Width of the evanescent energy window, upper - lower >= 0.
double tunneling_range(const StepPotential& pot, double m);

/// Tunneling width on the circle |W0|^2 + (V0 - m)^2 = m^2:
/// m (sqrt(1 + 4 V0/m) - 1). Requires 0 <= V0 <= 2m.
double tunneling_range_circle(double V0, double m);

/// Group velocity v_pm = (dQ_pm/dE)^{-1}. The minus branch requires
/// Q_minus_sq > 0. With W0 = 0 the complex-limit form q_pm/(E +/- V0) is
/// used and negative V0 is accepted there (and only there).
double velocity(const Kinematics& k, const StepPotential& pot, Branch branch);

/// The six spinor coefficients A, M, N for both momentum branches.
/// delta/(E - m) is evaluated through the exact identity
/// (E + m)|W0|^2 / (sqrt(E^2 V0^2 + p^2 |W0|^2) + E V0).
SpinorCoefficients coefficients(const Kinematics& k, const StepPotential& pot);

/// psi_minus(z) = [(1 - j W0 M-) chi; (A- - j W0 N-) sigma3 chi] e^{i Q- z}
QSpinor psi_minus(double z, Spin spin, const Kinematics& k,
                  const StepPotential& pot);

/// psi_plus(z) = [(-W0* N+ + j A+) sigma3 chi; (-W0* M+ + j) chi] e^{i Q+ z}
QSpinor psi_plus(double z, Spin spin, const Kinematics& k,
                 const StepPotential& pot);

}  // namespace qdirac
