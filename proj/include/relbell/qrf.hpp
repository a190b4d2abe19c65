#pragma once

#include "relbell/state.hpp"

namespace relbell {

/// How the per-pair rotation angle is obtained in the non-collinear
/// transform: from the closed-form cosine with a quadrant-cached sign, or
/// by factoring the full 4x4 boost composition at every grid pair.
enum class WignerMethod { closed_form, matrix_oracle };

/// Change of perspective from the rest frame of A to the laboratory frame
/// for collinear motion (B and C along the same axis). Pure relabeling:
/// the C momentum index becomes the A index with p_A = -(m_A/m_C) pi_C,
/// B's momentum is boosted per index pair, spin labels are untouched.
/// Throws config_error when the grid directions differ.
FrameCState transform_to_lab_collinear(const FrameAState& state);

/// Non-collinear version: B moves along e_x, the laboratory along a
/// distinct unit vector u in the xy-plane. Each b spin label is rotated
/// about e_z by the momentum-dependent angle of the residual rotation in
/// L_{-pi_C/m_C} L_{pi_B/m_B} = L_{p_B/m_B} R. Throws config_error when the
/// geometry is collinear (use transform_to_lab_collinear) or the grids do
/// not match the fixed-direction layout.
FrameCState transform_to_lab_noncollinear(const FrameAState& state,
                                          WignerMethod method = WignerMethod::closed_form);

/// Inverse of either forward transform; forward then inverse reproduces the
/// input amplitudes exactly up to rounding.
FrameAState inverse_transform(const FrameCState& state);

/// Single spin-1/2 particle described from its own rest frame together with
/// the laboratory's momentum wavepacket, relabeled to the laboratory
/// perspective.
struct SingleParticleLabState {
    double mass_a = 1.0;
    MomentumGrid grid_c;
    std::vector<cd> amps; // (i, a) layout: i * 2 + a
    std::vector<FourMomentum> p_a;

    cd amp(int i, int a) const { return amps[static_cast<std::size_t>(i) * 2 + static_cast<std::size_t>(a)]; }
    double squared_norm() const;
};

/// Relabels |a> |pi>_C to |-(m_A/m_C) pi; Sigma(a)>_A. The spin label is
/// unchanged in the rest-spin basis. Input spin amplitudes must be
/// normalized to 1e-10.
SingleParticleLabState transform_single_particle(const Vec2c& spin_amps, const Wavepacket& phi,
                                                 double mass_a);

} // namespace relbell
