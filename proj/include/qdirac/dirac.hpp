#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <utility>

#include "qdirac/potential.hpp"
#include "qdirac/quaternion.hpp"

namespace qdirac {

using Matrix4C = Eigen::Matrix4cd;
using Complex4Spinor = Eigen::Vector4cd;

/// Quaternionic 4-spinor psi = u + j*w with complex 4-spinors u, w.
/// The symplectic decomposition is unique: two spinors are equal iff
/// both u and w agree component-wise.
struct QSpinor {
  Complex4Spinor u = Complex4Spinor::Zero();
  Complex4Spinor w = Complex4Spinor::Zero();

  double norm() const { return std::sqrt(u.squaredNorm() + w.squaredNorm()); }
};

enum class ProductOrder { plus_minus, minus_plus };

/// Dirac-representation (alpha3, beta): sigma3 in the off-diagonal blocks
/// of alpha3, +/- identity blocks in beta.
std::pair<Matrix4C, Matrix4C> dirac_matrices();

/// M_minus = E - alpha3 Q - beta m - V0. Q may be complex (decaying waves).
Matrix4C m_minus(double E, Complex Q, double m, double V0);

/// M_plus = E - alpha3 Q + beta m + V0.
Matrix4C m_plus(double E, Complex Q, double m, double V0);

/// Closed-form block matrix for M_plus*M_minus: diagonal blocks
/// E^2 + Q^2 - (V0 +/- m)^2, off-diagonal blocks -2 Q (E +/- m) sigma3.
/// The minus_plus order is its transpose.
Matrix4C product_matrix(double E, Complex Q, double m, double V0,
                        ProductOrder order);

/// Left-hand side of the reduced Dirac equation
///   (E - alpha3 Q) psi + (beta m + V0 - j W0) i psi i = 0
/// applied to psi through quaternion arithmetic; zero for exact solutions.
QSpinor apply_dirac(const QSpinor& psi, Complex Q, double E, double m,
                    const StepPotential& pot);

/// Same residual evaluated through the coupled complex system
///   M_minus u + conj(W0) w  and  M_plus w + W0 u.
QSpinor coupled_residual(const QSpinor& psi, Complex Q, double E, double m,
                         const StepPotential& pot);

}  // namespace qdirac
