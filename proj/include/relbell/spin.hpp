#pragma once

#include "relbell/lorentz.hpp"

#include <complex>

namespace relbell {

using cd = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;

/// Pauli matrices in the basis |+z> = (1,0), |-z> = (0,1).
const Mat2c& pauli_x();
const Mat2c& pauli_y();
const Mat2c& pauli_z();
const Mat2c& pauli(int i); // i in {0,1,2} for x,y,z

/// n . sigma for an arbitrary (not necessarily unit) vector n.
Mat2c pauli_dot(const Vec3& n);

/// SU(2) rotation exp(-i angle (axis . sigma) / 2) together with its
/// generating angle-axis pair.
struct SpinRotationOperator {
    Mat2c matrix;
    Vec3 axis;
    double angle;
};

/// Throws std::invalid_argument if |axis| deviates from 1 by more than 1e-9.
SpinRotationOperator rotation_operator(const Vec3& axis, double angle);

/// A Bloch measurement direction. Construction rejects non-unit input
/// (beyond 1e-9) rather than normalizing it.
class SettingVector {
  public:
    explicit SettingVector(const Vec3& direction);
    SettingVector(double x, double y, double z) : SettingVector(Vec3(x, y, z)) {}

    const Vec3& direction() const { return dir_; }
    Mat2c observable() const { return pauli_dot(dir_); }

  private:
    Vec3 dir_;
};

/// Rodrigues rotation of v by `angle` about the unit vector `axis`:
/// v cosW + axis (axis.v)(1 - cosW) + (axis x v) sinW.
Vec3 rotate_vector(const Vec3& v, const Vec3& axis, double angle);

/// Rotated measurement setting. Satisfies the operator identity
/// R (y.sigma) R^dagger = (y_rotated).sigma with R = rotation_operator(axis, angle).
SettingVector rotate_setting(const SettingVector& y, const Vec3& axis, double angle);

} // namespace relbell
