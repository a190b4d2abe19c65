#include "relbell/bell.hpp"

#include "relbell/errors.hpp"
#include "relbell/qrf.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace relbell {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

void require_normalized(double norm_sq, const char* who) {
    if (std::abs(norm_sq - 1.0) > kNormTol) {
        std::ostringstream os;
        os << who << ": state norm " << norm_sq << " deviates from 1 beyond " << kNormTol;
        throw std::invalid_argument(os.str());
    }
}

/// <M| X (x) Y |M> for one momentum slice (rows of M index the first spin,
/// columns the second).
double slice_expectation(const Mat2c& m, const Mat2c& x_op, const Mat2c& y_op) {
    return ((x_op * m * y_op.transpose()).cwiseProduct(m.conjugate())).sum().real();
}

Mat3 slice_tensor(const Mat2c& m) {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t(i, j) = slice_expectation(m, pauli(i), pauli(j));
    return t;
}

Mat3 z_rotation(double angle) {
    return Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix();
}

ChshResult assemble_chsh(double e11, double e12, double e21, double e22, Frame frame,
                         SettingsMode mode) {
    for (double e : {e11, e12, e21, e22})
        if (std::abs(e) > 1.0 + 1e-9)
            throw consistency_error("chsh: correlation expectation outside [-1, 1]");
    ChshResult r{e11, e12, e21, e22, e11 + e12 + e21 - e22, frame, mode};
    if (std::abs(r.s) > kTsirelson + 1e-9)
        throw consistency_error("chsh: |S| exceeds the quantum bound");
    return r;
}

/// Signed rotation angle reconstructed from laboratory-frame momenta. The
/// composition L_{-p_A/m_A} L_{p_B/m_B} carries the inverse of the rotation
/// imprinted on the state, hence the sign flip.
double omega_from_lab_momenta(const FourMomentum& p_b, double m_b, const FourMomentum& p_a,
                              double m_a) {
    if (p_b.momentum.cross(p_a.momentum).squaredNorm() == 0.0)
        return 0.0;
    auto [boosted, rot] = wigner_from_composition(-p_a.momentum, m_a, p_b.momentum, m_b);
    (void)boosted;
    return -rot.signed_angle_about(Vec3::UnitZ());
}

} // namespace

CorrelationTensor::CorrelationTensor(const Mat3& entries) : t_(entries) {
    if (t_.cwiseAbs().maxCoeff() > 1.0 + 1e-10)
        throw std::invalid_argument("CorrelationTensor: entries must lie in [-1, 1]");
}

BellSettings BellSettings::optimal_singlet(SettingsMode mode) {
    const double r = 1.0 / std::numbers::sqrt2;
    return {SettingVector(0.0, r, r), SettingVector(0.0, r, -r), SettingVector(0.0, 1.0, 0.0),
            SettingVector(0.0, 0.0, 1.0), mode};
}

CorrelationTensor correlation_tensor_frame_a(const FrameAState& state) {
    require_normalized(state.squared_norm(), "correlation_tensor_frame_a");
    Mat3 t = Mat3::Zero();
    for (int ib = 0; ib < state.nb(); ++ib) {
        const double wb = state.grid_b().weight(ib);
        for (int ic = 0; ic < state.nc(); ++ic)
            t += wb * state.grid_c().weight(ic) * slice_tensor(state.spin_slice(ib, ic));
    }
    return CorrelationTensor(t);
}

CorrelationTensor effective_correlation_tensor(const FrameCState& state, SettingsMode mode) {
    require_normalized(state.squared_norm(), "effective_correlation_tensor");
    Mat3 t = Mat3::Zero();
    for (int ia = 0; ia < state.na(); ++ia) {
        for (int ib = 0; ib < state.nb(); ++ib) {
            Mat3 slice = slice_tensor(state.spin_slice(ia, ib));
            if (mode == SettingsMode::coherent)
                slice = slice * z_rotation(state.omega(ia, ib));
            t += state.pair_weight(ia, ib) * slice;
        }
    }
    return CorrelationTensor(t);
}

double expectation(const FrameAState& state, const SettingVector& x, const SettingVector& y,
                   SettingsMode mode) {
    if (mode == SettingsMode::coherent)
        throw config_error("expectation: coherent settings are defined only in the laboratory frame");
    require_normalized(state.squared_norm(), "expectation");
    const Mat2c x_op = x.observable();
    const Mat2c y_op = y.observable();
    double acc = 0.0;
    for (int ib = 0; ib < state.nb(); ++ib) {
        const double wb = state.grid_b().weight(ib);
        for (int ic = 0; ic < state.nc(); ++ic)
            acc += wb * state.grid_c().weight(ic) *
                   slice_expectation(state.spin_slice(ib, ic), x_op, y_op);
    }
    return acc;
}

double expectation(const FrameCState& state, const SettingVector& x, const SettingVector& y,
                   SettingsMode mode) {
    require_normalized(state.squared_norm(), "expectation");
    const Mat2c x_op = x.observable();
    const Mat2c y_op = y.observable();
    double acc = 0.0;
    for (int ia = 0; ia < state.na(); ++ia) {
        for (int ib = 0; ib < state.nb(); ++ib) {
            const Mat2c y_eff =
                mode == SettingsMode::coherent
                    ? pauli_dot(rotate_vector(y.direction(), Vec3::UnitZ(), state.omega(ia, ib)))
                    : y_op;
            acc += state.pair_weight(ia, ib) *
                   slice_expectation(state.spin_slice(ia, ib), x_op, y_eff);
        }
    }
    return acc;
}

double expectation_with_ancilla(const FrameCState& state, const SettingVector& x,
                                const SettingVector& y) {
    if (state.kind() != StateKind::noncollinear)
        throw config_error("expectation_with_ancilla: the protocol applies to non-collinear states");
    require_normalized(state.squared_norm(), "expectation_with_ancilla");

    // The ancilla register: one momentum value per A index, copied at
    // preparation time and read in place of p_A below.
    std::vector<FourMomentum> p_m;
    p_m.reserve(static_cast<std::size_t>(state.na()));
    for (int ia = 0; ia < state.na(); ++ia)
        p_m.push_back(state.p_a(ia));

    const Mat2c x_op = x.observable();
    const Masses& m = state.masses();
    double acc = 0.0;
    for (int im = 0; im < state.na(); ++im) {
        for (int ib = 0; ib < state.nb(); ++ib) {
            const double angle =
                omega_from_lab_momenta(state.p_b(im, ib), m.b, p_m[static_cast<std::size_t>(im)], m.a);
            const Mat2c y_eff = pauli_dot(rotate_vector(y.direction(), Vec3::UnitZ(), angle));
            acc += state.pair_weight(im, ib) *
                   slice_expectation(state.spin_slice(im, ib), x_op, y_eff);
        }
    }
    return acc;
}

ChshResult chsh(const FrameAState& state, const BellSettings& settings) {
    return assemble_chsh(expectation(state, settings.x1, settings.y1, settings.mode),
                         expectation(state, settings.x1, settings.y2, settings.mode),
                         expectation(state, settings.x2, settings.y1, settings.mode),
                         expectation(state, settings.x2, settings.y2, settings.mode), Frame::A,
                         settings.mode);
}

ChshResult chsh(const FrameCState& state, const BellSettings& settings) {
    return assemble_chsh(expectation(state, settings.x1, settings.y1, settings.mode),
                         expectation(state, settings.x1, settings.y2, settings.mode),
                         expectation(state, settings.x2, settings.y1, settings.mode),
                         expectation(state, settings.x2, settings.y2, settings.mode), Frame::C,
                         settings.mode);
}

ChshResult chsh_with_ancilla(const FrameCState& state, const BellSettings& settings) {
    return assemble_chsh(expectation_with_ancilla(state, settings.x1, settings.y1),
                         expectation_with_ancilla(state, settings.x1, settings.y2),
                         expectation_with_ancilla(state, settings.x2, settings.y1),
                         expectation_with_ancilla(state, settings.x2, settings.y2), Frame::C,
                         SettingsMode::coherent);
}

double horodecki_bound(const CorrelationTensor& t) {
    Eigen::JacobiSVD<Mat3> svd(t.entries());
    const auto& sv = svd.singularValues();
    return 2.0 * std::sqrt(sv[0] * sv[0] + sv[1] * sv[1]);
}

OptimalSettings optimal_settings(const CorrelationTensor& t, std::uint64_t seed) {
    const Mat3& m = t.entries();
    const double bound = horodecki_bound(t);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_unit = [&]() {
        Vec3 v;
        do {
            v = Vec3(gauss(rng), gauss(rng), gauss(rng));
        } while (v.norm() < 1e-6);
        return Vec3(v.normalized());
    };
    auto safe_normalize = [](const Vec3& v, const Vec3& fallback) {
        const double n = v.norm();
        return n > 1e-14 ? Vec3(v / n) : fallback;
    };

    double best_s = 0.0;
    Vec3 bx1 = Vec3::UnitX(), bx2 = Vec3::UnitY(), by1 = Vec3::UnitX(), by2 = Vec3::UnitY();

    for (int start = 0; start < 8; ++start) {
        Vec3 y1 = random_unit(), y2 = random_unit();
        Vec3 x1 = Vec3::UnitX(), x2 = Vec3::UnitY();
        double s = 0.0;
        for (int iter = 0; iter < 500; ++iter) {
            x1 = safe_normalize(m * (y1 + y2), x1);
            x2 = safe_normalize(m * (y1 - y2), x2);
            y1 = safe_normalize(m.transpose() * (x1 + x2), y1);
            y2 = safe_normalize(m.transpose() * (x1 - x2), y2);
            const double next = x1.dot(m * (y1 + y2)) + x2.dot(m * (y1 - y2));
            if (next - s <= 1e-12 * std::max(1.0, std::abs(next)) && iter > 0) {
                s = next;
                break;
            }
            s = next;
        }
        if (s > best_s) {
            best_s = s;
            bx1 = x1; bx2 = x2; by1 = y1; by2 = y2;
        }
    }

    if (std::abs(best_s - bound) > 1e-6) {
        std::ostringstream os;
        os << "optimal_settings: ascent maximum " << best_s
           << " does not meet the singular-value certificate " << bound;
        throw consistency_error(os.str());
    }

    return {BellSettings{SettingVector(bx1), SettingVector(bx2), SettingVector(by1),
                         SettingVector(by2), SettingsMode::naive},
            best_s, bound};
}

Mat2c random_spin_table(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat2c c;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            c(a, b) = cd(gauss(rng), gauss(rng));
    c /= std::sqrt(c.squaredNorm());
    return c;
}

Mat2c random_product_spin_table(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec2c u, v;
    for (int i = 0; i < 2; ++i) {
        u[i] = cd(gauss(rng), gauss(rng));
        v[i] = cd(gauss(rng), gauss(rng));
    }
    u.normalize();
    v.normalize();
    return u * v.transpose();
}

SettingVector random_setting(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec3 v;
    do {
        v = Vec3(gauss(rng), gauss(rng), gauss(rng));
    } while (v.norm() < 1e-6);
    return SettingVector(Vec3(v.normalized()));
}

BellSettings random_settings(std::mt19937_64& rng, SettingsMode mode) {
    return {random_setting(rng), random_setting(rng), random_setting(rng), random_setting(rng),
            mode};
}

FrameAState random_frame_a_state(const MomentumGrid& grid_b, const MomentumGrid& grid_c,
                                 double mass_a, std::mt19937_64& rng, bool product_spin) {
    auto random_packet = [&rng](const MomentumGrid& g) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double span = g.pi_max() - g.pi_min();
        const double w = g.spacing() * 2.0 + unit(rng) * (span / 25.0);
        const double lo = g.pi_min() + 5.5 * w;
        const double hi = g.pi_max() - 5.5 * w;
        const double center = lo + unit(rng) * (hi - lo);
        return Wavepacket::gaussian(g, center, w);
    };
    const Mat2c c = product_spin ? random_product_spin_table(rng) : random_spin_table(rng);
    return assemble_frame_a_state(c, random_packet(grid_b), random_packet(grid_c), mass_a);
}

} // namespace relbell
