#include "relbell/qrf.hpp"

#include "relbell/errors.hpp"

#include <array>
#include <cmath>
#include <optional>

namespace relbell {

namespace {

constexpr double kDirTol = 1e-12;

int sign_bucket(double x) { return x > 0.0 ? 1 : 0; }

/// Signed rotation angle about +e_z for one momentum pair, via the full
/// boost-composition factorization.
double oracle_omega(const Vec3& pi_b, double m_b, const Vec3& pi_c, double m_c) {
    auto [p_out, rot] = wigner_from_composition(-pi_c, m_c, pi_b, m_b);
    (void)p_out;
    return rot.signed_angle_about(Vec3::UnitZ());
}

/// The sign of the rotation angle is constant on each open sign quadrant of
/// (pi_B, pi_C): the angle is continuous in the magnitudes and vanishes only
/// when either momentum does. One factorization per quadrant pins it.
class QuadrantSign {
  public:
    QuadrantSign(const MomentumGrid& gb, const MomentumGrid& gc) : gb_(gb), gc_(gc) {}

    double sign(double pi_b, double pi_c) {
        auto& slot = cache_[static_cast<std::size_t>(sign_bucket(pi_b) * 2 + sign_bucket(pi_c))];
        if (!slot) {
            const Vec3 rep_b = std::copysign(largest_magnitude(gb_, pi_b), pi_b) * gb_.direction();
            const Vec3 rep_c = std::copysign(largest_magnitude(gc_, pi_c), pi_c) * gc_.direction();
            const double omega = oracle_omega(rep_b, gb_.mass(), rep_c, gc_.mass());
            slot = omega >= 0.0 ? 1.0 : -1.0;
        }
        return *slot;
    }

  private:
    static double largest_magnitude(const MomentumGrid& g, double same_sign_as) {
        double best = 0.0;
        for (int k = 0; k < g.size(); ++k) {
            const double s = g.sample(k);
            if ((same_sign_as > 0.0) == (s > 0.0) && std::abs(s) > best)
                best = std::abs(s);
        }
        return best;
    }

    const MomentumGrid& gb_;
    const MomentumGrid& gc_;
    std::array<std::optional<double>, 4> cache_;
};

std::vector<FourMomentum> relabeled_a_momenta(const MomentumGrid& gc, const Masses& m) {
    std::vector<FourMomentum> p_a;
    p_a.reserve(static_cast<std::size_t>(gc.size()));
    for (int ia = 0; ia < gc.size(); ++ia)
        p_a.push_back(FourMomentum::on_shell(m.a, -(m.a / m.c) * gc.sample(ia) * gc.direction()));
    return p_a;
}

} // namespace

FrameCState transform_to_lab_collinear(const FrameAState& state) {
    const MomentumGrid& gb = state.grid_b();
    const MomentumGrid& gc = state.grid_c();
    if ((gb.direction() - gc.direction()).norm() > kDirTol)
        throw config_error("transform_to_lab_collinear: grid directions differ; "
                           "use transform_to_lab_noncollinear");

    const Masses& m = state.masses();
    const int na = gc.size();
    const int nb = gb.size();

    std::vector<cd> amps(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb) * 4);
    std::vector<FourMomentum> p_b(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb));
    std::vector<double> omega(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb), 0.0);

    for (int ia = 0; ia < na; ++ia) {
        const BoostMatrix boost = pure_boost_matrix(-gc.momentum(ia), m.c);
        for (int ib = 0; ib < nb; ++ib) {
            const std::size_t pair =
                static_cast<std::size_t>(ia) * static_cast<std::size_t>(nb) + static_cast<std::size_t>(ib);
            p_b[pair] = boost.apply(FourMomentum::on_shell(m.b, gb.momentum(ib)));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    amps[(pair * 2 + static_cast<std::size_t>(a)) * 2 + static_cast<std::size_t>(b)] =
                        state.amp(a, b, ib, ia);
        }
    }

    return FrameCState(StateKind::collinear, std::move(amps), gb, gc, m,
                       relabeled_a_momenta(gc, m), std::move(p_b), std::move(omega));
}

FrameCState transform_to_lab_noncollinear(const FrameAState& state, WignerMethod method) {
    const MomentumGrid& gb = state.grid_b();
    const MomentumGrid& gc = state.grid_c();
    if ((gb.direction() - Vec3::UnitX()).norm() > kDirTol)
        throw config_error("transform_to_lab_noncollinear: B grid direction must be e_x");
    const Vec3& u = gc.direction();
    if (std::abs(u.z()) > kDirTol)
        throw config_error("transform_to_lab_noncollinear: laboratory direction must lie in the xy-plane");
    if (u.cross(Vec3::UnitX()).norm() <= kDirTol)
        throw config_error("transform_to_lab_noncollinear: collinear geometry; "
                           "use transform_to_lab_collinear");

    const Masses& m = state.masses();
    const int na = gc.size();
    const int nb = gb.size();

    std::vector<cd> amps(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb) * 4);
    std::vector<FourMomentum> p_b(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb));
    std::vector<double> omega(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb));

    QuadrantSign quadrant(gb, gc);

    for (int ia = 0; ia < na; ++ia) {
        const Vec3 pi_c = gc.momentum(ia);
        const BoostMatrix boost = pure_boost_matrix(-pi_c, m.c);
        for (int ib = 0; ib < nb; ++ib) {
            const Vec3 pi_b = gb.momentum(ib);
            const std::size_t pair =
                static_cast<std::size_t>(ia) * static_cast<std::size_t>(nb) + static_cast<std::size_t>(ib);
            p_b[pair] = boost.apply(FourMomentum::on_shell(m.b, pi_b));

            double w = 0.0;
            if (gb.sample(ib) != 0.0 && gc.sample(ia) != 0.0) {
                if (method == WignerMethod::matrix_oracle) {
                    w = oracle_omega(pi_b, m.b, pi_c, m.c);
                } else {
                    const double c = std::clamp(wigner_angle_closed_form(pi_b, m.b, pi_c, m.c), -1.0, 1.0);
                    w = quadrant.sign(gb.sample(ib), gc.sample(ia)) * std::acos(c);
                }
            }
            omega[pair] = w;

            const Mat2c rot_t = rotation_operator(Vec3::UnitZ(), w).matrix.transpose();
            const Mat2c out = state.spin_slice(ib, ia) * rot_t;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    amps[(pair * 2 + static_cast<std::size_t>(a)) * 2 + static_cast<std::size_t>(b)] = out(a, b);
        }
    }

    return FrameCState(StateKind::noncollinear, std::move(amps), gb, gc, m,
                       relabeled_a_momenta(gc, m), std::move(p_b), std::move(omega));
}

FrameAState inverse_transform(const FrameCState& state) {
    const MomentumGrid& gb = state.grid_b();
    const MomentumGrid& gc = state.grid_c();
    if (state.kind() == StateKind::collinear && (gb.direction() - gc.direction()).norm() > kDirTol)
        throw config_error("inverse_transform: collinear state with mismatched grid directions");
    if (state.kind() == StateKind::noncollinear &&
        ((gb.direction() - Vec3::UnitX()).norm() > kDirTol || std::abs(gc.direction().z()) > kDirTol))
        throw config_error("inverse_transform: state geometry does not match the fixed-direction layout");

    const int na = state.na();
    const int nb = state.nb();
    std::vector<cd> amps(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb) * 4);

    for (int ia = 0; ia < na; ++ia) {
        for (int ib = 0; ib < nb; ++ib) {
            const Mat2c rot_t = rotation_operator(Vec3::UnitZ(), -state.omega(ia, ib)).matrix.transpose();
            const Mat2c out = state.spin_slice(ia, ib) * rot_t;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    amps[((static_cast<std::size_t>(ib) * static_cast<std::size_t>(na) +
                           static_cast<std::size_t>(ia)) * 2 + static_cast<std::size_t>(a)) * 2 +
                         static_cast<std::size_t>(b)] = out(a, b);
        }
    }

    return FrameAState::from_tensor(std::move(amps), gb, gc, state.masses());
}

double SingleParticleLabState::squared_norm() const {
    double acc = 0.0;
    for (int i = 0; i < grid_c.size(); ++i)
        acc += grid_c.weight(i) * (std::norm(amp(i, 0)) + std::norm(amp(i, 1)));
    return acc;
}

SingleParticleLabState transform_single_particle(const Vec2c& spin_amps, const Wavepacket& phi,
                                                 double mass_a) {
    if (std::abs(spin_amps.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("transform_single_particle: spin amplitudes must be normalized");
    if (!(mass_a > 0.0))
        throw std::invalid_argument("transform_single_particle: mass must be positive");

    const MomentumGrid& gc = phi.grid();
    SingleParticleLabState out{mass_a, gc, {}, {}};
    out.amps.resize(static_cast<std::size_t>(gc.size()) * 2);
    out.p_a.reserve(static_cast<std::size_t>(gc.size()));
    for (int i = 0; i < gc.size(); ++i) {
        out.p_a.push_back(
            FourMomentum::on_shell(mass_a, -(mass_a / gc.mass()) * gc.sample(i) * gc.direction()));
        for (int a = 0; a < 2; ++a)
            out.amps[static_cast<std::size_t>(i) * 2 + static_cast<std::size_t>(a)] =
                spin_amps[a] * phi.amplitude(i);
    }
    return out;
}

} // namespace relbell
