#include <doctest.h>

#include "relbell/errors.hpp"
#include "relbell/lorentz.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace relbell;
using namespace relbell::testing;

namespace {

// Velocity-parameterized construction, kept independent of the library's
// momentum form: [[g, g v^T], [g v, I + g^2/(g+1) v v^T]].
Mat4 boost_from_velocity(const Vec3& v) {
    const double g = 1.0 / std::sqrt(1.0 - v.squaredNorm());
    Mat4 m;
    m(0, 0) = g;
    m.block<1, 3>(0, 1) = g * v.transpose();
    m.block<3, 1>(1, 0) = g * v;
    m.block<3, 3>(1, 1) = Mat3::Identity() + (g * g / (g + 1.0)) * v * v.transpose();
    return m;
}

// The linear-numerator variant of the angle formula. Kept only to document
// that it disagrees with the boost factorization; the library implements the
// squared-numerator form.
double cos_linear_numerator(const Vec3& pi_b, double m_b, const Vec3& pi_c, double m_c) {
    const double gb = std::sqrt(1.0 + pi_b.squaredNorm() / (m_b * m_b));
    const double gc = std::sqrt(1.0 + pi_c.squaredNorm() / (m_c * m_c));
    const Vec3 beta_b = pi_b / (m_b * gb);
    const Vec3 beta_c = pi_c / (m_c * gc);
    const double gl = gb * gc * (1.0 - beta_b.dot(beta_c));
    return (1.0 + gb + gc + gl) / ((1.0 + gb) * (1.0 + gc) * (1.0 + gl)) - 1.0;
}

} // namespace

TEST_CASE("pure boost: rest momentum gives the identity") {
    const BoostMatrix l = pure_boost_matrix(Vec3::Zero(), 1.0);
    CHECK((l.matrix() - Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pure boost: gamma entry for p = 0.75, m = 1") {
    const BoostMatrix l = pure_boost_matrix(Vec3(0.75, 0, 0), 1.0);
    CHECK(l.gamma() == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(l.beta().x() == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("pure boost: applying to the rest vector yields the on-shell momentum") {
    const BoostMatrix l = pure_boost_matrix(Vec3(0.75, 0, 0), 1.0);
    const Vec4 out = l.apply(Vec4(1.0, 0.0, 0.0, 0.0));
    CHECK(std::abs(out[0] - 1.25) <= 1e-15);
    CHECK(std::abs(out[1] - 0.75) <= 1e-15);
    CHECK(out[2] == 0.0);
    CHECK(out[3] == 0.0);
}

TEST_CASE("pure boost: invalid input is rejected") {
    CHECK_THROWS_AS(pure_boost_matrix(Vec3(1, 0, 0), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pure_boost_matrix(Vec3(1, 0, 0), -2.0), std::invalid_argument);
    CHECK_THROWS_AS(pure_boost_matrix(Vec3(std::nan(""), 0, 0), 1.0), std::invalid_argument);
}

TEST_CASE("pure boost matches the velocity parameterization") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> mdist(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double m = mdist(rng);
        const Vec3 p = random_momentum(rng, m, 0.95);
        const double e = std::sqrt(m * m + p.squaredNorm());
        const Mat4 ref = boost_from_velocity(p / e);
        CHECK((pure_boost_matrix(p, m).matrix() - ref).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("metric preservation over 10^4 random boosts") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> mdist(0.1, 10.0);
    const Mat4 eta = minkowski();
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double m = mdist(rng);
        const Mat4 l = pure_boost_matrix(random_momentum(rng, m, 0.99), m).matrix();
        worst = std::max(worst, (l.transpose() * eta * l - eta).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("boosts preserve the on-shell condition") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> mdist(0.1, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const double m_boost = mdist(rng);
        const double m = mdist(rng);
        const BoostMatrix l = pure_boost_matrix(random_momentum(rng, m_boost, 0.99), m_boost);
        const FourMomentum q = FourMomentum::on_shell(m, random_momentum(rng, m, 0.99));
        const FourMomentum out = l.apply(q);
        CHECK(std::abs(out.invariant_mass() - m) <= 1e-12 * m);
        CHECK(out.energy > 0.0);
    }
}

TEST_CASE("gamma composition identity") {
    // Boosting pi_B into the frame that stops pi_C gives the time component
    // m_B g_B g_C (1 - beta_B . beta_C).
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> mdist(0.2, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const double m_b = mdist(rng);
        const double m_c = mdist(rng);
        const Vec3 pi_b = random_momentum(rng, m_b, 0.99);
        const Vec3 pi_c = random_momentum(rng, m_c, 0.99);
        const double gb = std::sqrt(1.0 + pi_b.squaredNorm() / (m_b * m_b));
        const double gc = std::sqrt(1.0 + pi_c.squaredNorm() / (m_c * m_c));
        const Vec3 beta_b = pi_b / (m_b * gb);
        const Vec3 beta_c = pi_c / (m_c * gc);
        const double expected = m_b * gb * gc * (1.0 - beta_b.dot(beta_c));

        const FourMomentum out =
            pure_boost_matrix(-pi_c, m_c).apply(FourMomentum::on_shell(m_b, pi_b));
        CHECK(std::abs(out.energy - expected) <= 1e-12 * expected);
    }
}

TEST_CASE("composition of collinear boosts is rotation-free") {
    const auto [p, rot] = wigner_from_composition(Vec3(0.5, 0, 0), 1.3, Vec3(0.2, 0, 0), 0.7);
    CHECK(rot.angle == 0.0);
    CHECK((rot.matrix - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(std::abs(p.invariant_mass() - 0.7) <= 1e-14);
}

TEST_CASE("composition with zero boost is the identity") {
    const Vec3 pi(0.4, 0, 0);
    const auto [p, rot] = wigner_from_composition(Vec3::Zero(), 2.0, pi, 1.0);
    CHECK(rot.angle == 0.0);
    CHECK((p.momentum - pi).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("perpendicular 0.6/0.6 composition: frozen factorization values") {
    // L_{-pi_C} L_{pi_B} with pi_B = 0.75 e_x, pi_C = 0.75 e_y, unit masses.
    const auto [p, rot] =
        wigner_from_composition(Vec3(0, -0.75, 0), 1.0, Vec3(0.75, 0, 0), 1.0);

    CHECK(std::abs(p.energy - 1.5625) <= 1e-14);
    CHECK(std::abs(p.momentum.x() - 0.75) <= 1e-14);
    CHECK(std::abs(p.momentum.y() + 0.9375) <= 1e-14);
    CHECK(p.momentum.z() == 0.0);

    CHECK(std::abs(std::cos(rot.angle) - 40.0 / 41.0) <= 1e-14);
    CHECK(std::abs(rot.angle - 0.22131444234779138) <= 1e-13);
    CHECK(std::abs(std::abs(rot.axis.z()) - 1.0) <= 1e-12);
    CHECK(std::abs(rot.signed_angle_about(Vec3::UnitZ()) + 0.22131444234779138) <= 1e-13);

    // The rotation matrix fixes its axis.
    CHECK((rot.matrix * rot.axis - rot.axis).norm() <= 1e-13);
    CHECK(std::abs(rot.matrix.determinant() - 1.0) <= 1e-13);
}

TEST_CASE("closed form: collinear and degenerate cases give cos = 1") {
    CHECK(wigner_angle_closed_form(Vec3(0.3, 0, 0), 1.0, Vec3(0.9, 0, 0), 2.0) == 1.0);
    CHECK(wigner_angle_closed_form(Vec3(0.3, 0, 0), 1.0, Vec3(-0.9, 0, 0), 2.0) == 1.0);
    CHECK(wigner_angle_closed_form(Vec3::Zero(), 1.0, Vec3(0, 0.5, 0), 1.0) == 1.0);
    CHECK(wigner_angle_closed_form(Vec3(0.5, 0, 0), 1.0, Vec3::Zero(), 1.0) == 1.0);
}

TEST_CASE("closed form: perpendicular 0.6/0.6 arithmetic") {
    const double cf =
        wigner_angle_closed_form(Vec3(0.75, 0, 0), 1.0, Vec3(0, 0.75, 0), 1.0);
    CHECK(std::abs(cf - 40.0 / 41.0) <= 1e-15);
    CHECK(std::abs(cf - (25.62890625 / 12.97265625 - 1.0)) <= 1e-15);
}

TEST_CASE("closed form agrees with the factorization over 1000 random samples") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> beta(1e-4, 0.99);
    std::uniform_real_distribution<double> angle(1e-3, std::numbers::pi - 1e-3);
    std::uniform_real_distribution<double> mdist(0.1, 10.0);
    std::uniform_int_distribution<int> coin(0, 1);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double m_b = mdist(rng), m_c = mdist(rng);
        const double bb = beta(rng), bc = beta(rng), xi = angle(rng);
        const double sign_b = coin(rng) ? 1.0 : -1.0;
        const Vec3 pi_b = sign_b * m_b * bb / std::sqrt(1 - bb * bb) * Vec3::UnitX();
        const Vec3 pi_c = m_c * bc / std::sqrt(1 - bc * bc) * Vec3(std::cos(xi), std::sin(xi), 0);

        const auto [p, rot] = wigner_from_composition(-pi_c, m_c, pi_b, m_b);
        (void)p;
        const double cf = wigner_angle_closed_form(pi_b, m_b, pi_c, m_c);
        worst = std::max(worst, std::abs(std::cos(rot.angle) - cf));

        // Momenta in the xy-plane rotate about +-e_z.
        CHECK(std::abs(std::abs(rot.axis.z()) - 1.0) <= 1e-9);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("the linear-numerator variant disagrees with the factorization") {
    const Vec3 pi_b(0.75, 0, 0), pi_c(0, 0.75, 0);
    const double wrong = cos_linear_numerator(pi_b, 1.0, pi_c, 1.0);
    CHECK(std::abs(wrong + 0.6097560975609756) <= 1e-15);
    const auto [p, rot] = wigner_from_composition(-pi_c, 1.0, pi_b, 1.0);
    (void)p;
    CHECK(std::abs(wrong - std::cos(rot.angle)) > 1.0);
}

TEST_CASE("angle vanishes continuously in the collinear limit") {
    const double beta = 0.8;
    const double mom = beta / std::sqrt(1 - beta * beta);
    double previous = std::numbers::pi;
    for (double xi : {0.5, 0.1, 0.02, 0.004, 0.0008}) {
        const Vec3 pi_b = mom * Vec3::UnitX();
        const Vec3 pi_c = mom * Vec3(std::cos(xi), std::sin(xi), 0);
        const auto rot = wigner_from_composition(-pi_c, 1.0, pi_b, 1.0).second;
        CHECK(rot.angle < previous);
        previous = rot.angle;
    }
    CHECK(previous <= 1e-3);
}

TEST_CASE("lab-variable form of the angle matches the rest-frame form") {
    // Recomputing the cosine from the transformed momenta (p_B, p_A) with
    // masses (m_B, m_A) reproduces the rest-frame value.
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> mdist(0.3, 4.0);
    std::uniform_real_distribution<double> beta(0.01, 0.98);
    std::uniform_real_distribution<double> angle(0.05, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double m_a = mdist(rng), m_b = mdist(rng), m_c = mdist(rng);
        const double bb = beta(rng), bc = beta(rng), xi = angle(rng);
        const Vec3 pi_b = m_b * bb / std::sqrt(1 - bb * bb) * Vec3::UnitX();
        const Vec3 pi_c = m_c * bc / std::sqrt(1 - bc * bc) * Vec3(std::cos(xi), std::sin(xi), 0);

        const auto p_b = wigner_from_composition(-pi_c, m_c, pi_b, m_b).first;
        const Vec3 p_a = -(m_a / m_c) * pi_c;
        const double rest = wigner_angle_closed_form(pi_b, m_b, pi_c, m_c);
        const double lab = wigner_angle_closed_form(p_b.momentum, m_b, p_a, m_a);
        CHECK(std::abs(rest - lab) <= 1e-12);
    }
}

TEST_CASE("signed_angle_about rejects a mismatched axis") {
    const auto rot =
        wigner_from_composition(Vec3(0, -0.75, 0), 1.0, Vec3(0.75, 0, 0), 1.0).second;
    CHECK_THROWS_AS(rot.signed_angle_about(Vec3::UnitX()), consistency_error);
}
