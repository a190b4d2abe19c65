#pragma once

#include "relbell/state.hpp"

#include <cstdint>
#include <random>

namespace relbell {

/// Measurement-setting policy in the laboratory frame: `naive` keeps the
/// rest-frame setting vectors, `coherent` replaces y by the
/// momentum-dependent rotated vector y^R that undoes the Wigner rotation.
enum class SettingsMode { naive, coherent };

enum class Frame { A, C };

/// Spin-spin correlation matrix T^{ij} = <sigma^i (x) sigma^j> in the
/// rest-spin basis. Entries are bounded by 1 (up to rounding).
class CorrelationTensor {
  public:
    explicit CorrelationTensor(const Mat3& entries);
    const Mat3& entries() const { return t_; }
    double operator()(int i, int j) const { return t_(i, j); }

  private:
    Mat3 t_;
};

struct BellSettings {
    SettingVector x1, x2, y1, y2;
    SettingsMode mode = SettingsMode::naive;

    /// x1 = (0,1,1)/sqrt2, x2 = (0,1,-1)/sqrt2, y1 = e_y, y2 = e_z; the
    /// standard settings maximizing |S| for the singlet.
    static BellSettings optimal_singlet(SettingsMode mode = SettingsMode::naive);
};

struct ChshResult {
    double e11 = 0.0, e12 = 0.0, e21 = 0.0, e22 = 0.0;
    double s = 0.0; // e11 + e12 + e21 - e22
    Frame frame = Frame::A;
    SettingsMode mode = SettingsMode::naive;

    double abs_s() const { return std::abs(s); }
};

/// T^{ij} for a rest-frame state; the relativistic spin observable of B
/// acts as a Pauli operator on the rest-spin label, so the momentum sums
/// reduce to quadrature weights. Throws std::invalid_argument when the
/// state norm deviates from 1 beyond 1e-10.
CorrelationTensor correlation_tensor_frame_a(const FrameAState& state);

/// Momentum-averaged tensor that reproduces expectation(state, x, y, mode)
/// as x . T y; in coherent mode the per-pair rotation is folded in.
CorrelationTensor effective_correlation_tensor(const FrameCState& state, SettingsMode mode);

/// <(x.sigma) (x) (y.Xi)> in the rest frame of A. Coherent mode is
/// meaningless here and throws config_error.
double expectation(const FrameAState& state, const SettingVector& x, const SettingVector& y,
                   SettingsMode mode = SettingsMode::naive);

/// Laboratory-frame expectation <(x.Xi_A) (x) (y.Xi_B)>; both factors act
/// as Pauli operators on the rest-spin labels and are diagonal in momentum.
/// In coherent mode y is replaced per momentum pair by the rotated y^R.
double expectation(const FrameCState& state, const SettingVector& x, const SettingVector& y,
                   SettingsMode mode);

/// Laboratory-frame expectation through the factorized protocol: an
/// ancilla M is prepared perfectly correlated with A's momentum index and
/// the y-side rotation angle is recomputed from the ancilla's stored
/// momentum and B's laboratory momentum (not from the transform's own
/// angle table). Requires a non-collinear state.
double expectation_with_ancilla(const FrameCState& state, const SettingVector& x,
                                const SettingVector& y);

ChshResult chsh(const FrameAState& state, const BellSettings& settings);
ChshResult chsh(const FrameCState& state, const BellSettings& settings);
ChshResult chsh_with_ancilla(const FrameCState& state, const BellSettings& settings);

struct OptimalSettings {
    BellSettings settings;
    double predicted_s = 0.0;   // |S| attained by the returned settings
    double horodecki_bound = 0.0; // 2 sqrt(t1^2 + t2^2)
};

/// 2 sqrt(t1^2 + t2^2) from the two largest singular values of T.
double horodecki_bound(const CorrelationTensor& t);

/// Maximizes |S| over the four unit setting vectors by alternating exact
/// coordinate updates (the best x-pair for fixed y-pair is analytic, and
/// vice versa), multi-started from seeded random directions. The result is
/// certified against the singular-value bound.
OptimalSettings optimal_settings(const CorrelationTensor& t, std::uint64_t seed = 0);

/// Reproducible random inputs for property sweeps.
Mat2c random_spin_table(std::mt19937_64& rng);
Mat2c random_product_spin_table(std::mt19937_64& rng);
SettingVector random_setting(std::mt19937_64& rng);
BellSettings random_settings(std::mt19937_64& rng, SettingsMode mode = SettingsMode::naive);

/// Haar-like spin table with Gaussian packets whose centers and widths are
/// drawn inside the grid safety margins.
FrameAState random_frame_a_state(const MomentumGrid& grid_b, const MomentumGrid& grid_c,
                                 double mass_a, std::mt19937_64& rng, bool product_spin = false);

} // namespace relbell
