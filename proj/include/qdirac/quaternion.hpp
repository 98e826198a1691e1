#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace qdirac {

using Complex = std::complex<double>;

/// Quaternion in symplectic form: q = z1 + j*z2 with complex z1, z2.
/// Every product below follows from j*z = conj(z)*j and j^2 = -1.
struct Quaternion {
  Complex z1{0.0, 0.0};
  Complex z2{0.0, 0.0};

  Quaternion() = default;
  Quaternion(Complex a, Complex b) : z1(a), z2(b) {}
  explicit Quaternion(double r) : z1(r, 0.0), z2(0.0, 0.0) {}

  static Quaternion unit_i() { return {{0.0, 1.0}, {0.0, 0.0}}; }
  static Quaternion unit_j() { return {{0.0, 0.0}, {1.0, 0.0}}; }
  static Quaternion unit_k() { return {{0.0, 0.0}, {0.0, -1.0}}; }

  bool operator==(const Quaternion&) const = default;
};

enum class Side { left, right };

inline Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.z1 + b.z1, a.z2 + b.z2};
}

inline Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.z1 - b.z1, a.z2 - b.z2};
}

inline Quaternion operator-(const Quaternion& a) { return {-a.z1, -a.z2}; }

/// (z1 + j z2)(y1 + j y2) = (z1 y1 - conj(z2) y2) + j (conj(z1) y2 + z2 y1)
inline Quaternion mul(const Quaternion& p, const Quaternion& q) {
  return {p.z1 * q.z1 - std::conj(p.z2) * q.z2,
          std::conj(p.z1) * q.z2 + p.z2 * q.z1};
}

inline Quaternion conj(const Quaternion& q) { return {std::conj(q.z1), -q.z2}; }

inline double norm_sq(const Quaternion& q) {
  return std::norm(q.z1) + std::norm(q.z2);
}

inline double norm(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

/// One-sided complex scaling; left and right differ on the j part.
inline Quaternion scale(const Quaternion& q, Complex c, Side side) {
  if (side == Side::left) return {c * q.z1, std::conj(c) * q.z2};
  return {q.z1 * c, q.z2 * c};
}

/// i*q*i, which equals -z1 + j*z2 in symplectic components.
inline Quaternion i_sandwich(const Quaternion& q) { return {-q.z1, q.z2}; }

/// Real 4-tuple (w, x, y, z) of q = w + x i + y j + z k. Cross-check use only;
/// note z1 = w + i x and z2 = y - i z under the q = z1 + j z2 convention.
inline std::array<double, 4> to_wxyz(const Quaternion& q) {
  return {q.z1.real(), q.z1.imag(), q.z2.real(), -q.z2.imag()};
}

inline Quaternion from_wxyz(const std::array<double, 4>& v) {
  return {{v[0], v[1]}, {v[2], -v[3]}};
}

}  // namespace qdirac
