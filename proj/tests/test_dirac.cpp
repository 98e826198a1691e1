#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qdirac/dirac.hpp"

using namespace qdirac;

namespace {

QSpinor random_spinor(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QSpinor psi;
  for (int i = 0; i < 4; ++i) {
    psi.u(i) = Complex{u(rng), u(rng)};
    psi.w(i) = Complex{u(rng), u(rng)};
  }
  return psi;
}

double max_abs(const Matrix4C& m) { return m.cwiseAbs().maxCoeff(); }

// Complex Dirac step residual (E - alpha3 Q - beta m - V0) u, coded
// independently of the quaternionic machinery.
Complex4Spinor complex_step_residual(const Complex4Spinor& u, Complex Q,
                                     double E, double m, double V0) {
  Complex4Spinor r;
  r(0) = (E - V0 - m) * u(0) - Q * u(2);
  r(1) = (E - V0 - m) * u(1) + Q * u(3);
  r(2) = (E - V0 + m) * u(2) - Q * u(0);
  r(3) = (E - V0 + m) * u(3) + Q * u(1);
  return r;
}

}  // namespace

TEST_CASE("Dirac representation: Hermiticity and Clifford relations") {
  const auto [alpha3, beta] = dirac_matrices();
  const Matrix4C id = Matrix4C::Identity();

  CHECK(max_abs(alpha3 - alpha3.adjoint()) == 0.0);
  CHECK(max_abs(beta - beta.adjoint()) == 0.0);
  CHECK(max_abs(alpha3 * alpha3 - id) == 0.0);
  CHECK(max_abs(beta * beta - id) == 0.0);
  CHECK(max_abs(alpha3 * beta + beta * alpha3) == 0.0);

  CHECK(alpha3(0, 2) == Complex{1.0, 0.0});
  CHECK(alpha3(1, 3) == Complex{-1.0, 0.0});
}

TEST_CASE("M matrices at Q = V0 = 0 are mass-gap diagonals") {
  const double E = 1.7, m = 1.0;
  const Matrix4C mm = m_minus(E, 0.0, m, 0.0);
  const Matrix4C mp = m_plus(E, 0.0, m, 0.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(mm(i, i) == Complex{i < 2 ? E - m : E + m, 0.0});
    CHECK(mp(i, i) == Complex{i < 2 ? E + m : E - m, 0.0});
  }
  CHECK(max_abs(mm) == E + m);
  CHECK(max_abs(mp) == E + m);
}

TEST_CASE("product matrix block form at E=2m, Q=m, V0=m") {
  const double E = 2.0, m = 1.0, V0 = 1.0;
  const Complex Q{1.0, 0.0};

  Matrix4C expected = Matrix4C::Zero();
  expected(0, 0) = expected(1, 1) = 1.0;  // E^2 + Q^2 - (V0+m)^2
  expected(2, 2) = expected(3, 3) = 5.0;  // E^2 + Q^2 - (V0-m)^2
  expected(0, 2) = -6.0;                  // -2 Q (E+m) sigma3
  expected(1, 3) = 6.0;
  expected(2, 0) = -2.0;                  // -2 Q (E-m) sigma3
  expected(3, 1) = 2.0;

  const Matrix4C literal = m_plus(E, Q, m, V0) * m_minus(E, Q, m, V0);
  CHECK(max_abs(literal - expected) <= 1e-14);
  CHECK(max_abs(product_matrix(E, Q, m, V0, ProductOrder::plus_minus) -
                expected) == 0.0);
}

TEST_CASE("product matrix matches the literal product, complex Q included") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  for (int n = 0; n < 300; ++n) {
    const double E = 1.0 + u(rng);
    const double m = u(rng);
    const double V0 = u(rng);
    const Complex Q = n % 3 == 0 ? Complex{0.0, u(rng)} : Complex{s(rng), s(rng)};

    const Matrix4C closed = product_matrix(E, Q, m, V0, ProductOrder::plus_minus);
    const Matrix4C literal = m_plus(E, Q, m, V0) * m_minus(E, Q, m, V0);
    CHECK(max_abs(closed - literal) < 1e-12 * std::max(1.0, max_abs(closed)));

    const Matrix4C transposed =
        product_matrix(E, Q, m, V0, ProductOrder::minus_plus);
    CHECK(max_abs(transposed - Matrix4C(closed.transpose())) == 0.0);
    const Matrix4C literal_mp = m_minus(E, Q, m, V0) * m_plus(E, Q, m, V0);
    CHECK(max_abs(transposed - literal_mp) <
          1e-12 * std::max(1.0, max_abs(transposed)));
  }
}

TEST_CASE("product matrix at Q = 0, V0 = 0") {
  const double E = 2.5, m = 1.0;
  const Matrix4C p = product_matrix(E, 0.0, m, 0.0, ProductOrder::plus_minus);
  const Matrix4C expected = (E * E - m * m) * Matrix4C::Identity();
  CHECK(max_abs(p - expected) == 0.0);
}

TEST_CASE("apply_dirac splits into the coupled complex system") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  for (int n = 0; n < 300; ++n) {
    const QSpinor psi = random_spinor(rng);
    const double E = 1.0 + u(rng);
    const double m = u(rng);
    const StepPotential pot{u(rng), Complex{s(rng), s(rng)}};
    const Complex Q{s(rng), s(rng)};

    const QSpinor via_quaternions = apply_dirac(psi, Q, E, m, pot);
    const QSpinor via_matrices = coupled_residual(psi, Q, E, m, pot);
    CHECK((via_quaternions.u - via_matrices.u).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((via_quaternions.w - via_matrices.w).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("random spinors are generically not solutions") {
  std::mt19937 rng(31);
  const StepPotential pot{0.7, Complex{0.4, 0.2}};
  const QSpinor psi = random_spinor(rng);
  const QSpinor res = apply_dirac(psi, Complex{1.3, 0.0}, 2.0, 1.0, pot);
  CHECK(res.norm() > 1e-3);
}

TEST_CASE("W0 = 0 with psi = (u, 0) reduces to the complex step equation") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 100; ++n) {
    QSpinor psi;
    for (int i = 0; i < 4; ++i) psi.u(i) = Complex{u(rng), u(rng)};
    const double E = 2.1, m = 1.0, V0 = 0.8;
    const Complex Q{0.9, 0.0};

    const QSpinor res = apply_dirac(psi, Q, E, m, StepPotential{V0, {0.0, 0.0}});
    const Complex4Spinor expected = complex_step_residual(psi.u, Q, E, m, V0);
    CHECK((res.u - expected).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(res.w.cwiseAbs().maxCoeff() == 0.0);
  }
}
