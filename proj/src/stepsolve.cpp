#include "qdirac/stepsolve.hpp"

#include <algorithm>
#include <cmath>

namespace qdirac {

namespace {

constexpr double kDegenerateRel = 1e-12;

const Complex kI{0.0, 1.0};

}  // namespace

double delta(const Kinematics& k, const StepPotential& pot) {
  require_supported(pot);
  const double w0 = pot.w0_abs();
  const double r0 = std::hypot(k.E * pot.V0, k.p * w0);
  const double den = r0 + k.E * pot.V0;
  if (den == 0.0) return 0.0;  // V0 = |W0| = 0
  const double pw = k.p * w0;
  return pw * pw / den;
}

Momenta momenta(const Kinematics& k, const StepPotential& pot) {
  require_supported(pot);
  const double w0 = pot.w0_abs();

  Momenta mo;
  mo.q_minus_sq = (k.E - pot.V0 - k.m) * (k.E - pot.V0 + k.m);
  mo.q_plus_sq = (k.E + pot.V0 - k.m) * (k.E + pot.V0 + k.m);
  mo.delta = delta(k, pot);

  if (pot.V0 == 0.0) {
    // q^2 + |W0|^2 -/+ 2 p |W0| factored; avoids cancellation near p = |W0|
    mo.Q_minus_sq = (k.p - w0) * (k.p - w0);
    mo.Q_plus_sq = (k.p + w0) * (k.p + w0);
  } else {
    mo.Q_minus_sq = mo.q_minus_sq + w0 * w0 - 2.0 * mo.delta;
    mo.Q_plus_sq = mo.q_plus_sq + w0 * w0 + 2.0 * mo.delta;
  }

  mo.Q_plus = Complex(std::sqrt(mo.Q_plus_sq), 0.0);
  mo.Q_minus = mo.Q_minus_sq >= 0.0
                   ? Complex(std::sqrt(mo.Q_minus_sq), 0.0)
                   : Complex(0.0, std::sqrt(-mo.Q_minus_sq));
  return mo;
}

ZoneClassification classify_zone(const Kinematics& k, const StepPotential& pot,
                                 double tol) {
  require_supported(pot);
  const double w0 = pot.w0_abs();

  ZoneClassification zc;
  zc.upper = std::hypot(w0, pot.V0 + k.m);
  zc.lower = std::max(k.m, std::hypot(w0, pot.V0 - k.m));

  if (std::abs(k.E - zc.upper) <= tol * zc.upper ||
      std::abs(k.E - zc.lower) <= tol * zc.lower) {
    zc.zone = Zone::boundary;
  } else if (k.E > zc.upper) {
    zc.zone = Zone::diffusion;
  } else if (k.E > zc.lower) {
    zc.zone = Zone::evanescent;
  } else {
    zc.zone = Zone::klein;
  }
  return zc;
}

double tunneling_range(const StepPotential& pot, double m) {
  require_supported(pot);
  if (!(m > 0.0)) throw std::domain_error("tunneling_range: mass must be positive");
  const double w0 = pot.w0_abs();
  const double upper = std::hypot(w0, pot.V0 + m);
  const double lower = std::max(m, std::hypot(w0, pot.V0 - m));
  return upper - lower;
}

double tunneling_range_circle(double V0, double m) {
  if (!(m > 0.0))
    throw std::domain_error("tunneling_range_circle: mass must be positive");
  if (V0 < 0.0 || V0 > 2.0 * m)
    throw std::domain_error("tunneling_range_circle: V0 must lie in [0, 2m]");
  return m * (std::sqrt(1.0 + 4.0 * V0 / m) - 1.0);
}

double velocity(const Kinematics& k, const StepPotential& pot, Branch branch) {
  const double sgn = branch == Branch::plus ? 1.0 : -1.0;
  const double w0 = pot.w0_abs();

  if (w0 == 0.0) {
    // complex limit: v_pm = q_pm / (E +/- V0), any sign of V0
    const double ev = k.E + sgn * pot.V0;
    const double qsq = (ev - k.m) * (ev + k.m);
    if (!(qsq > 0.0))
      throw std::domain_error("velocity: no oscillating solution on this branch");
    return std::sqrt(qsq) / ev;
  }

  require_supported(pot);
  if (pot.V0 == 0.0) {
    // Q_pm = |p +/- |W0||, so v collapses to +/- p/E exactly
    if (branch == Branch::plus) return k.p / k.E;
    if (k.p == w0)
      throw std::domain_error("velocity: no oscillating solution on this branch");
    return k.p > w0 ? k.p / k.E : -k.p / k.E;
  }

  const Momenta mo = momenta(k, pot);
  const double qsq = branch == Branch::plus ? mo.Q_plus_sq : mo.Q_minus_sq;
  if (!(qsq > 0.0))
    throw std::domain_error("velocity: no oscillating solution on this branch");

  const double r0 = std::hypot(k.E * pot.V0, k.p * w0);
  const double factor = 1.0 + sgn * (pot.V0 * pot.V0 + w0 * w0) / r0;
  if (std::abs(factor) < kDegenerateRel)
    throw DegeneracyError("velocity: stationary point of Q(E)");
  return std::sqrt(qsq) / k.E / factor;
}

SpinorCoefficients coefficients(const Kinematics& k, const StepPotential& pot) {
  require_supported(pot);
  const double w0 = pot.w0_abs();
  const Momenta mo = momenta(k, pot);

  // delta/(E - m) through p^2 = (E - m)(E + m); finite for E -> m
  const double r0 = std::hypot(k.E * pot.V0, k.p * w0);
  const double den0 = r0 + k.E * pot.V0;
  const double delta_over = den0 == 0.0 ? 0.0 : (k.E + k.m) * w0 * w0 / den0;

  const double a_den_minus = k.E - pot.V0 + k.m - delta_over;
  const double a_den_plus = k.E + pot.V0 + k.m + delta_over;
  if (std::abs(a_den_minus) < kDegenerateRel * k.E ||
      std::abs(a_den_plus) < kDegenerateRel * k.E)
    throw DegeneracyError("coefficients: vanishing A denominator");

  const double mn_den_minus = mo.q_plus_sq - mo.Q_minus_sq;
  const double mn_den_plus = mo.q_minus_sq - mo.Q_plus_sq;
  if (std::abs(mn_den_minus) < kDegenerateRel * k.E * k.E ||
      std::abs(mn_den_plus) < kDegenerateRel * k.E * k.E)
    throw DegeneracyError("coefficients: vanishing M/N denominator");

  SpinorCoefficients c;
  c.A_minus = mo.Q_minus / a_den_minus;
  c.A_plus = mo.Q_plus / a_den_plus;
  c.M_minus = (mo.Q_minus * c.A_minus + (k.E - k.m + pot.V0)) / mn_den_minus;
  c.N_minus = ((k.E + k.m + pot.V0) * c.A_minus + mo.Q_minus) / mn_den_minus;
  c.M_plus = (mo.Q_plus * c.A_plus + (k.E - k.m - pot.V0)) / mn_den_plus;
  // N_plus carries A_plus in the numerator; the residual certification in
  // the test suite pins this choice.
  c.N_plus = ((k.E + k.m - pot.V0) * c.A_plus + mo.Q_plus) / mn_den_plus;
  return c;
}

namespace {

// chi in {[1 0]^t, [0 1]^t}; sigma3 chi is a sign flip on the down choice.
struct SpinBasis {
  int index;
  double sigma3;
};

SpinBasis spin_basis(Spin spin) {
  return spin == Spin::up ? SpinBasis{0, 1.0} : SpinBasis{1, -1.0};
}

}  // namespace

QSpinor psi_minus(double z, Spin spin, const Kinematics& k,
                  const StepPotential& pot) {
  const Momenta mo = momenta(k, pot);
  const SpinorCoefficients c = coefficients(k, pot);
  const Complex phase = std::exp(kI * mo.Q_minus * z);
  const SpinBasis s = spin_basis(spin);

  QSpinor psi;
  psi.u(s.index) = phase;
  psi.u(2 + s.index) = c.A_minus * s.sigma3 * phase;
  psi.w(s.index) = -pot.W0 * c.M_minus * phase;
  psi.w(2 + s.index) = -pot.W0 * c.N_minus * s.sigma3 * phase;
  return psi;
}

QSpinor psi_plus(double z, Spin spin, const Kinematics& k,
                 const StepPotential& pot) {
  const Momenta mo = momenta(k, pot);
  const SpinorCoefficients c = coefficients(k, pot);
  const Complex phase = std::exp(kI * mo.Q_plus * z);
  const SpinBasis s = spin_basis(spin);

  QSpinor psi;
  psi.u(s.index) = -std::conj(pot.W0) * c.N_plus * s.sigma3 * phase;
  psi.u(2 + s.index) = -std::conj(pot.W0) * c.M_plus * phase;
  psi.w(s.index) = c.A_plus * s.sigma3 * phase;
  psi.w(2 + s.index) = phase;
  return psi;
}

}  // namespace qdirac
