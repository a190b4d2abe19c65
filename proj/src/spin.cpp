#include "relbell/spin.hpp"

#include <cmath>
#include <stdexcept>

namespace relbell {

namespace {
const cd I(0.0, 1.0);
}

const Mat2c& pauli_x() {
    static const Mat2c m = (Mat2c() << 0, 1, 1, 0).finished();
    return m;
}

const Mat2c& pauli_y() {
    static const Mat2c m = (Mat2c() << 0, -I, I, 0).finished();
    return m;
}

const Mat2c& pauli_z() {
    static const Mat2c m = (Mat2c() << 1, 0, 0, -1).finished();
    return m;
}

const Mat2c& pauli(int i) {
    switch (i) {
    case 0: return pauli_x();
    case 1: return pauli_y();
    case 2: return pauli_z();
    default: throw std::invalid_argument("pauli: index must be 0, 1 or 2");
    }
}

Mat2c pauli_dot(const Vec3& n) {
    return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

SpinRotationOperator rotation_operator(const Vec3& axis, double angle) {
    if (std::abs(axis.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("rotation_operator: axis must be a unit vector");
    const double half = 0.5 * angle;
    Mat2c m = std::cos(half) * Mat2c::Identity() - I * std::sin(half) * pauli_dot(axis);
    return {m, axis, angle};
}

SettingVector::SettingVector(const Vec3& direction) : dir_(direction) {
    if (!direction.allFinite() || std::abs(direction.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("SettingVector: direction must be a unit vector");
}

Vec3 rotate_vector(const Vec3& v, const Vec3& axis, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return v * c + axis * (axis.dot(v)) * (1.0 - c) + axis.cross(v) * s;
}

SettingVector rotate_setting(const SettingVector& y, const Vec3& axis, double angle) {
    if (std::abs(axis.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("rotate_setting: axis must be a unit vector");
    return SettingVector(rotate_vector(y.direction(), axis, angle));
}

} // namespace relbell
