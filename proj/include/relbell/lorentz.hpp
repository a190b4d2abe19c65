#pragma once

#include <Eigen/Dense>
#include <utility>

namespace relbell {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/// Energy and momentum of an on-shell particle in natural units (c = 1).
/// Masses and momenta share units; energy = sqrt(m^2 + |p|^2).
struct FourMomentum {
    double energy = 0.0;
    Vec3 momentum = Vec3::Zero();

    static FourMomentum on_shell(double mass, const Vec3& p);

    /// sqrt(E^2 - |p|^2); valid for timelike vectors.
    double invariant_mass() const;

    Vec4 as_vector() const { return Vec4(energy, momentum.x(), momentum.y(), momentum.z()); }
    static FourMomentum from_vector(const Vec4& v) { return {v[0], Vec3(v[1], v[2], v[3])}; }
};

/// A pure Lorentz boost, parameterized by the momentum it imparts to a
/// particle of the given mass:
///
///   L = [ p0/m      p^T/m                    ]
///       [ p/m       I + p p^T / (m^2 (g+1))  ]
///
/// with g = sqrt(1 + |p|^2/m^2) and p0 = m g. Applying the matrix to the
/// rest vector (m, 0) yields (p0, p). The inverse is the boost by -p and
/// is exact (no matrix inversion).
class BoostMatrix {
  public:
    static BoostMatrix from_momentum(const Vec3& p, double mass);
    static BoostMatrix identity();

    FourMomentum apply(const FourMomentum& q) const { return FourMomentum::from_vector(mat_ * q.as_vector()); }
    Vec4 apply(const Vec4& q) const { return mat_ * q; }

    BoostMatrix inverse() const;

    const Mat4& matrix() const { return mat_; }
    double gamma() const { return mat_(0, 0); }
    Vec3 beta() const { return mat_.block<3, 1>(1, 0) / mat_(0, 0); }

  private:
    BoostMatrix(const Mat4& m, const Vec3& p_over_m) : mat_(m), p_over_m_(p_over_m) {}
    Mat4 mat_;
    Vec3 p_over_m_;
};

/// Rotation residue of two composed non-collinear boosts. The angle is
/// stored unsigned in [0, pi]; the axis carries the orientation. For a
/// degenerate (identity) rotation the axis defaults to e_z.
struct WignerRotation {
    Vec3 axis = Vec3::UnitZ();
    double angle = 0.0;
    Mat3 matrix = Mat3::Identity();

    /// Angle signed by the projection of the stored axis onto n. Requires
    /// the rotation to actually be about +-n (checked for non-degenerate
    /// angles); throws consistency_error otherwise.
    double signed_angle_about(const Vec3& n) const;
};

/// Boost matrix imparting momentum p to a particle of mass m.
/// Throws std::invalid_argument for non-positive mass or non-finite p.
BoostMatrix pure_boost_matrix(const Vec3& p, double mass);

/// Composes L_{p_boost/m_boost} . L_{p_particle/m_particle}, reads off the
/// boosted four-momentum p' of the particle, and factors the composition as
/// L_{p'/m_particle} . R. Returns (p', R). The temporal block of R must be
/// the identity to 1e-10 or a consistency_error is thrown.
std::pair<FourMomentum, WignerRotation>
wigner_from_composition(const Vec3& p_boost, double m_boost,
                        const Vec3& p_particle, double m_particle);

/// cos of the rotation angle produced when a particle with momentum pi_b
/// (mass m_b) is boosted into the frame that brings a system of momentum
/// pi_c (mass m_c) to rest:
///
///   cos W = (1 + g_b + g_c + g_l)^2 / ((1+g_b)(1+g_c)(1+g_l)) - 1
///
/// with g_l = g_b g_c (1 - beta_b . beta_c). Collinear or vanishing
/// momenta give exactly 1. Must agree with wigner_from_composition applied
/// to (-pi_c, m_c, pi_b, m_b); the factorization is the authority.
double wigner_angle_closed_form(const Vec3& pi_b, double m_b,
                                const Vec3& pi_c, double m_c);

} // namespace relbell
