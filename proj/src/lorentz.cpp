#include "relbell/lorentz.hpp"

#include "relbell/errors.hpp"

#include <cmath>
#include <sstream>

namespace relbell {

FourMomentum FourMomentum::on_shell(double mass, const Vec3& p) {
    if (!(mass > 0.0))
        throw std::invalid_argument("FourMomentum::on_shell: mass must be positive");
    if (!p.allFinite())
        throw std::invalid_argument("FourMomentum::on_shell: momentum must be finite");
    return {std::sqrt(mass * mass + p.squaredNorm()), p};
}

double FourMomentum::invariant_mass() const {
    return std::sqrt(energy * energy - momentum.squaredNorm());
}

BoostMatrix BoostMatrix::from_momentum(const Vec3& p, double mass) {
    if (!(mass > 0.0))
        throw std::invalid_argument("BoostMatrix: mass must be positive");
    if (!p.allFinite() || !std::isfinite(mass))
        throw std::invalid_argument("BoostMatrix: non-finite input");

    const Vec3 u = p / mass;
    const double gamma = std::sqrt(1.0 + u.squaredNorm());
    Mat4 m;
    m(0, 0) = gamma;
    m.block<1, 3>(0, 1) = u.transpose();
    m.block<3, 1>(1, 0) = u;
    m.block<3, 3>(1, 1) = Mat3::Identity() + u * u.transpose() / (gamma + 1.0);
    return BoostMatrix(m, u);
}

BoostMatrix BoostMatrix::identity() {
    return BoostMatrix(Mat4::Identity(), Vec3::Zero());
}

BoostMatrix BoostMatrix::inverse() const {
    // A pure boost by p inverts to the pure boost by -p.
    const Vec3 u = -p_over_m_;
    Mat4 m;
    m(0, 0) = mat_(0, 0);
    m.block<1, 3>(0, 1) = u.transpose();
    m.block<3, 1>(1, 0) = u;
    m.block<3, 3>(1, 1) = mat_.block<3, 3>(1, 1);
    return BoostMatrix(m, u);
}

BoostMatrix pure_boost_matrix(const Vec3& p, double mass) {
    return BoostMatrix::from_momentum(p, mass);
}

double WignerRotation::signed_angle_about(const Vec3& n) const {
    if (angle == 0.0)
        return 0.0;
    const double proj = axis.dot(n);
    if (std::abs(std::abs(proj) - 1.0) > 1e-6)
        throw consistency_error("WignerRotation: rotation axis is not aligned with the requested axis");
    return proj > 0.0 ? angle : -angle;
}

namespace {

WignerRotation extract_rotation(const Mat3& r) {
    WignerRotation w;
    w.matrix = r;
    const double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
    const Vec3 v(0.5 * (r(2, 1) - r(1, 2)),
                 0.5 * (r(0, 2) - r(2, 0)),
                 0.5 * (r(1, 0) - r(0, 1)));
    const double s = v.norm();
    if (s < 1e-300) {
        if (c < 0.0)
            throw consistency_error("extract_rotation: half-turn rotations are outside the supported range");
        w.axis = Vec3::UnitZ();
        w.angle = 0.0;
        return w;
    }
    w.axis = v / s;
    w.angle = std::atan2(s, c);
    return w;
}

} // namespace

std::pair<FourMomentum, WignerRotation>
wigner_from_composition(const Vec3& p_boost, double m_boost,
                        const Vec3& p_particle, double m_particle) {
    const BoostMatrix outer = BoostMatrix::from_momentum(p_boost, m_boost);
    const BoostMatrix inner = BoostMatrix::from_momentum(p_particle, m_particle);
    const Mat4 total = outer.matrix() * inner.matrix();

    const Vec4 boosted = total * Vec4(m_particle, 0.0, 0.0, 0.0);
    const FourMomentum p_out = FourMomentum::from_vector(boosted);

    const BoostMatrix take_out = BoostMatrix::from_momentum(p_out.momentum, m_particle);
    const Mat4 residual = take_out.inverse().matrix() * total;

    double temporal = std::abs(residual(0, 0) - 1.0);
    for (int i = 1; i < 4; ++i)
        temporal = std::max({temporal, std::abs(residual(0, i)), std::abs(residual(i, 0))});
    if (temporal > 1e-10) {
        std::ostringstream os;
        os << "wigner_from_composition: factorization residual " << temporal << " exceeds 1e-10";
        throw consistency_error(os.str());
    }

    return {p_out, extract_rotation(residual.block<3, 3>(1, 1))};
}

double wigner_angle_closed_form(const Vec3& pi_b, double m_b,
                                const Vec3& pi_c, double m_c) {
    if (!(m_b > 0.0) || !(m_c > 0.0))
        throw std::invalid_argument("wigner_angle_closed_form: masses must be positive");
    if (pi_b.cross(pi_c).squaredNorm() == 0.0)
        return 1.0;

    const double gb = std::sqrt(1.0 + pi_b.squaredNorm() / (m_b * m_b));
    const double gc = std::sqrt(1.0 + pi_c.squaredNorm() / (m_c * m_c));
    const Vec3 beta_b = pi_b / (m_b * gb);
    const Vec3 beta_c = pi_c / (m_c * gc);
    const double gl = gb * gc * (1.0 - beta_b.dot(beta_c));

    const double num = 1.0 + gb + gc + gl;
    const double den = (1.0 + gb) * (1.0 + gc) * (1.0 + gl);
    return num * num / den - 1.0;
}

} // namespace relbell
