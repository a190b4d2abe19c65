#include <doctest.h>

#include "relbell/spin.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace relbell;
using namespace relbell::testing;

TEST_CASE("pauli matrices are hermitian and traceless") {
    for (int i = 0; i < 3; ++i) {
        CHECK((pauli(i) - pauli(i).adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK(std::abs(pauli(i).trace()) <= 1e-14);
    }
}

TEST_CASE("pauli algebra: sigma_i sigma_j = delta_ij + i eps_ijk sigma_k") {
    auto eps = [](int i, int j, int k) {
        return ((i + 1) % 3 == j && (j + 1) % 3 == k) ? 1.0
               : ((j + 1) % 3 == i && (i + 1) % 3 == k) ? -1.0
                                                        : 0.0;
    };
    const cd im(0.0, 1.0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Mat2c expected = (i == j ? 1.0 : 0.0) * Mat2c::Identity();
            for (int k = 0; k < 3; ++k)
                expected += im * eps(i, j, k) * pauli(k);
            CHECK((pauli(i) * pauli(j) - expected).cwiseAbs().maxCoeff() <= 1e-14);
        }
    }
}

TEST_CASE("rotation operator: zero angle is the identity") {
    const auto r = rotation_operator(Vec3::UnitZ(), 0.0);
    CHECK((r.matrix - Mat2c::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotation operator: 2pi gives the spinor sign flip") {
    const auto r = rotation_operator(Vec3::UnitZ(), 2.0 * std::numbers::pi);
    CHECK((r.matrix + Mat2c::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("rotation operator: quarter turn about e_z is diagonal") {
    const auto r = rotation_operator(Vec3::UnitZ(), std::numbers::pi / 2.0);
    const cd e_minus = std::polar(1.0, -std::numbers::pi / 4.0);
    const cd e_plus = std::polar(1.0, std::numbers::pi / 4.0);
    CHECK(std::abs(r.matrix(0, 0) - e_minus) <= 1e-15);
    CHECK(std::abs(r.matrix(1, 1) - e_plus) <= 1e-15);
    CHECK(std::abs(r.matrix(0, 1)) == 0.0);
    CHECK(std::abs(r.matrix(1, 0)) == 0.0);
}

TEST_CASE("rotation operator: e_z form equals cos - i sigma_z sin") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-6.0, 6.0);
    for (int i = 0; i < 100; ++i) {
        const double w = angle(rng);
        const Mat2c expected = std::cos(w / 2) * Mat2c::Identity() -
                               cd(0, 1) * std::sin(w / 2) * pauli_z();
        CHECK((rotation_operator(Vec3::UnitZ(), w).matrix - expected).cwiseAbs().maxCoeff() <=
              1e-14);
    }
}

TEST_CASE("rotation operator: unitary with unit determinant, composes additively") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Vec3 n = random_unit_vec3(rng);
        const double w1 = angle(rng), w2 = angle(rng);
        const Mat2c r1 = rotation_operator(n, w1).matrix;
        const Mat2c r2 = rotation_operator(n, w2).matrix;
        CHECK((r1 * r1.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK(std::abs(r1.determinant() - 1.0) <= 1e-14);
        CHECK((r1 * r2 - rotation_operator(n, w1 + w2).matrix).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("rotation operator rejects a non-unit axis") {
    CHECK_THROWS_AS(rotation_operator(Vec3(0, 0, 1.001), 0.3), std::invalid_argument);
    CHECK_THROWS_AS(rotation_operator(Vec3::Zero(), 0.3), std::invalid_argument);
}

TEST_CASE("setting vectors reject non-unit input") {
    CHECK_THROWS_AS(SettingVector(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SettingVector(Vec3::Zero()), std::invalid_argument);
    const double r = 1.0 / std::numbers::sqrt2;
    CHECK(SettingVector(0.0, r, r).direction().y() == r);
}

TEST_CASE("rotate_setting: zero angle keeps the vector") {
    const SettingVector y(0.0, 1.0, 0.0);
    const auto out = rotate_setting(y, Vec3::UnitZ(), 0.0);
    CHECK((out.direction() - y.direction()).norm() == 0.0);
}

TEST_CASE("rotate_setting: the rotation axis itself is invariant") {
    const SettingVector y(0.0, 0.0, 1.0);
    for (double w : {0.1, 1.0, 2.5, -0.7})
        CHECK((rotate_setting(y, Vec3::UnitZ(), w).direction() - Vec3::UnitZ()).norm() <= 1e-15);
}

TEST_CASE("rotate_setting: e_y about e_z gives (-sin, cos, 0)") {
    for (double w : {0.2, 0.9, -1.3, 2.8}) {
        const Vec3 out = rotate_setting(SettingVector(0, 1, 0), Vec3::UnitZ(), w).direction();
        CHECK(std::abs(out.x() + std::sin(w)) <= 1e-15);
        CHECK(std::abs(out.y() - std::cos(w)) <= 1e-15);
        CHECK(out.z() == 0.0);
    }
}

TEST_CASE("conjugation identity: R (y.sigma) R^dagger = y_rotated . sigma") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> angle(-3.1, 3.1);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 n = random_unit_vec3(rng);
        const Vec3 y = random_unit_vec3(rng);
        const double w = angle(rng);
        const Mat2c r = rotation_operator(n, w).matrix;
        const Mat2c lhs = r * pauli_dot(y) * r.adjoint();
        const Mat2c rhs = pauli_dot(rotate_vector(y, n, w));
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("rotate_setting preserves the norm") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> angle(-3.1, 3.1);
    for (int i = 0; i < 1000; ++i) {
        const auto out =
            rotate_setting(SettingVector(random_unit_vec3(rng)), random_unit_vec3(rng), angle(rng));
        CHECK(std::abs(out.direction().norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("double rotation equals a single rotation by the doubled angle") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> angle(-1.5, 1.5);
    for (int i = 0; i < 200; ++i) {
        const Vec3 n = random_unit_vec3(rng);
        const SettingVector y(random_unit_vec3(rng));
        const double w = angle(rng);
        const Vec3 twice = rotate_setting(rotate_setting(y, n, w), n, w).direction();
        const Vec3 once = rotate_setting(y, n, 2.0 * w).direction();
        CHECK((twice - once).norm() <= 1e-12);
    }
}

TEST_CASE("su(2) lift of an extracted rotation matrix conjugates consistently") {
    // The spatial rotation from a boost factorization and its spin operator
    // act identically on directions.
    std::mt19937_64 rng(27);
    std::uniform_real_distribution<double> beta(0.05, 0.95);
    std::uniform_real_distribution<double> ang(0.1, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double bb = beta(rng), bc = beta(rng), xi = ang(rng);
        const Vec3 pi_b = bb / std::sqrt(1 - bb * bb) * Vec3::UnitX();
        const Vec3 pi_c = bc / std::sqrt(1 - bc * bc) * Vec3(std::cos(xi), std::sin(xi), 0);
        const auto rot = wigner_from_composition(-pi_c, 1.0, pi_b, 1.0).second;
        const double signed_angle = rot.signed_angle_about(Vec3::UnitZ());
        const Mat2c r = rotation_operator(Vec3::UnitZ(), signed_angle).matrix;
        const Vec3 y = random_unit_vec3(rng);
        const Mat2c lhs = r * pauli_dot(y) * r.adjoint();
        const Mat2c rhs = pauli_dot(rot.matrix * y);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13);
    }
}
