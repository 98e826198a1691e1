#include "qdirac/dirac.hpp"

#include <array>
#include <stdexcept>

namespace qdirac {

namespace {

void require_mass(double m) {
  if (!(m > 0.0)) throw std::domain_error("mass must be positive");
}

}  // namespace

std::pair<Matrix4C, Matrix4C> dirac_matrices() {
  Matrix4C alpha3 = Matrix4C::Zero();
  alpha3(0, 2) = 1.0;
  alpha3(1, 3) = -1.0;
  alpha3(2, 0) = 1.0;
  alpha3(3, 1) = -1.0;

  Matrix4C beta = Matrix4C::Zero();
  beta(0, 0) = 1.0;
  beta(1, 1) = 1.0;
  beta(2, 2) = -1.0;
  beta(3, 3) = -1.0;
  return {alpha3, beta};
}

Matrix4C m_minus(double E, Complex Q, double m, double V0) {
  require_mass(m);
  Matrix4C out = Matrix4C::Zero();
  out(0, 0) = out(1, 1) = E - V0 - m;
  out(2, 2) = out(3, 3) = E - V0 + m;
  out(0, 2) = out(2, 0) = -Q;
  out(1, 3) = out(3, 1) = Q;
  return out;
}

Matrix4C m_plus(double E, Complex Q, double m, double V0) {
  require_mass(m);
  Matrix4C out = Matrix4C::Zero();
  out(0, 0) = out(1, 1) = E + V0 + m;
  out(2, 2) = out(3, 3) = E + V0 - m;
  out(0, 2) = out(2, 0) = -Q;
  out(1, 3) = out(3, 1) = Q;
  return out;
}

Matrix4C product_matrix(double E, Complex Q, double m, double V0,
                        ProductOrder order) {
  require_mass(m);
  const Complex diag_upper = E * E + Q * Q - (V0 + m) * (V0 + m);
  const Complex diag_lower = E * E + Q * Q - (V0 - m) * (V0 - m);
  const Complex off_upper = -2.0 * Q * (E + m);
  const Complex off_lower = -2.0 * Q * (E - m);

  Matrix4C out = Matrix4C::Zero();
  out(0, 0) = out(1, 1) = diag_upper;
  out(2, 2) = out(3, 3) = diag_lower;
  out(0, 2) = off_upper;
  out(1, 3) = -off_upper;
  out(2, 0) = off_lower;
  out(3, 1) = -off_lower;
  if (order == ProductOrder::minus_plus) return out.transpose();
  return out;
}

QSpinor apply_dirac(const QSpinor& psi, Complex Q, double E, double m,
                    const StepPotential& pot) {
  require_mass(m);

  std::array<Quaternion, 4> q;
  for (int a = 0; a < 4; ++a) q[a] = Quaternion(psi.u(a), psi.w(a));

  // alpha3 x = (x2, -x3, x0, -x1); beta x = (x0, x1, -x2, -x3)
  constexpr int amap[4] = {2, 3, 0, 1};
  constexpr double asign[4] = {1.0, -1.0, 1.0, -1.0};
  constexpr double bsign[4] = {1.0, 1.0, -1.0, -1.0};

  const Quaternion j_w0{Complex(0.0, 0.0), pot.W0};  // j*W0

  QSpinor out;
  for (int a = 0; a < 4; ++a) {
    const Quaternion phi = i_sandwich(q[a]);  // i psi i, component-wise
    Quaternion alpha_part = q[amap[a]];
    if (asign[a] < 0.0) alpha_part = -alpha_part;

    // E and Q act from the right of the plane-wave ansatz.
    Quaternion r = scale(q[a], Complex(E, 0.0), Side::right);
    r = r - scale(alpha_part, Q, Side::right);
    r = r + scale(phi, Complex(m * bsign[a] + pot.V0, 0.0), Side::left);
    r = r - mul(j_w0, phi);

    out.u(a) = r.z1;
    out.w(a) = r.z2;
  }
  return out;
}

QSpinor coupled_residual(const QSpinor& psi, Complex Q, double E, double m,
                         const StepPotential& pot) {
  const Matrix4C mm = m_minus(E, Q, m, pot.V0);
  const Matrix4C mp = m_plus(E, Q, m, pot.V0);
  QSpinor out;
  out.u = mm * psi.u + std::conj(pot.W0) * psi.w;
  out.w = mp * psi.w + pot.W0 * psi.u;
  return out;
}

}  // namespace qdirac
