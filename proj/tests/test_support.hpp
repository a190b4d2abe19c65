#pragma once

#include "relbell/state.hpp"

#include <functional>
#include <random>

namespace relbell::testing {

inline Mat4 minkowski() {
    Mat4 eta = Mat4::Zero();
    eta.diagonal() << 1.0, -1.0, -1.0, -1.0;
    return eta;
}

inline Vec3 random_unit_vec3(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec3 v;
    do {
        v = Vec3(gauss(rng), gauss(rng), gauss(rng));
    } while (v.norm() < 1e-6);
    return v.normalized();
}

/// Momentum of magnitude m*gamma*beta along a random direction, |beta| <= beta_max.
inline Vec3 random_momentum(std::mt19937_64& rng, double mass, double beta_max) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double beta = beta_max * unit(rng);
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    return mass * gamma * beta * random_unit_vec3(rng);
}

/// Grid with an odd sample count centered exactly on `value`.
inline MomentumGrid grid_containing(double mass, const Vec3& dir, double value, int half_points = 8,
                                    double half_span = 1.0) {
    return MomentumGrid(mass, dir, value - half_span, value + half_span, 2 * half_points + 1);
}

/// Independent contraction route: flattens each momentum slice into a
/// 4-vector and applies the explicit kron(X, Y) built element by element.
/// The y direction may depend on the momentum pair.
inline double dense_expectation(const FrameCState& state, const Vec3& x,
                                const std::function<Vec3(int, int)>& y_at) {
    auto sigma = [](const Vec3& n, int r, int c) -> cd {
        const cd sx[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
        const cd sy[2][2] = {{0.0, cd(0.0, -1.0)}, {cd(0.0, 1.0), 0.0}};
        const cd sz[2][2] = {{1.0, 0.0}, {0.0, -1.0}};
        return n.x() * sx[r][c] + n.y() * sy[r][c] + n.z() * sz[r][c];
    };
    double acc = 0.0;
    for (int ia = 0; ia < state.na(); ++ia) {
        for (int ib = 0; ib < state.nb(); ++ib) {
            const Vec3 y = y_at(ia, ib);
            cd slice(0.0);
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            slice += std::conj(state.amp(ap, bp, ia, ib)) * sigma(x, ap, a) *
                                     sigma(y, bp, b) * state.amp(a, b, ia, ib);
            acc += state.pair_weight(ia, ib) * slice.real();
        }
    }
    return acc;
}

inline double dense_expectation(const FrameAState& state, const Vec3& x, const Vec3& y) {
    auto sigma = [](const Vec3& n, int r, int c) -> cd {
        const cd sx[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
        const cd sy[2][2] = {{0.0, cd(0.0, -1.0)}, {cd(0.0, 1.0), 0.0}};
        const cd sz[2][2] = {{1.0, 0.0}, {0.0, -1.0}};
        return n.x() * sx[r][c] + n.y() * sy[r][c] + n.z() * sz[r][c];
    };
    double acc = 0.0;
    for (int ib = 0; ib < state.nb(); ++ib) {
        for (int ic = 0; ic < state.nc(); ++ic) {
            cd slice(0.0);
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            slice += std::conj(state.amp(ap, bp, ib, ic)) * sigma(x, ap, a) *
                                     sigma(y, bp, b) * state.amp(a, b, ib, ic);
            acc += state.grid_b().weight(ib) * state.grid_c().weight(ic) * slice.real();
        }
    }
    return acc;
}

inline Mat2c singlet_table() {
    Mat2c c = Mat2c::Zero();
    c(0, 1) = 1.0 / std::sqrt(2.0);
    c(1, 0) = -1.0 / std::sqrt(2.0);
    return c;
}

} // namespace relbell::testing
