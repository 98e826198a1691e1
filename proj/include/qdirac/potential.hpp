#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qdirac {

using Complex = std::complex<double>;

/// Step potential i*V0 + k*W0 switched on for z > 0 (natural units).
struct StepPotential {
  double V0 = 0.0;
  Complex W0{0.0, 0.0};

  double w0_abs() const { return std::abs(W0); }
};

/// Incoming particle above the mass gap: m > 0, E > m, p = sqrt(E^2 - m^2).
struct Kinematics {
  double E;
  double m;
  double p;

  Kinematics(double energy, double mass) : E(energy), m(mass), p(0.0) {
    if (!(m > 0.0)) throw std::domain_error("Kinematics: mass must be positive");
    if (!(E > m)) throw std::domain_error("Kinematics: energy must exceed the mass");
    p = std::sqrt((E - m) * (E + m));
  }
};

/// Every operation except velocity() supports V0 >= 0 only.
inline void require_supported(const StepPotential& pot) {
  if (!(pot.V0 >= 0.0))
    throw std::domain_error("StepPotential: V0 must be non-negative");
}

}  // namespace qdirac
