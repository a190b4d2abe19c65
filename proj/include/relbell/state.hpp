#pragma once

#include "relbell/lorentz.hpp"
#include "relbell/spin.hpp"

#include <span>
#include <vector>

namespace relbell {

/// Uniform one-dimensional momentum samples along a fixed direction, with
/// trapezoid quadrature weights folded into the Lorentz-invariant measure
/// d pi / (4 pi sqrt(m^2 + pi^2)). Samples are projections onto the
/// direction and may be negative.
class MomentumGrid {
  public:
    MomentumGrid(double mass, const Vec3& direction, double pi_min, double pi_max, int n_points);

    double mass() const { return mass_; }
    const Vec3& direction() const { return dir_; }
    int size() const { return static_cast<int>(samples_.size()); }
    double spacing() const { return spacing_; }
    double pi_min() const { return samples_.front(); }
    double pi_max() const { return samples_.back(); }

    double sample(int k) const { return samples_[static_cast<std::size_t>(k)]; }
    Vec3 momentum(int k) const { return sample(k) * dir_; }
    double energy(int k) const; // sqrt(m^2 + pi_k^2)
    double weight(int k) const { return weights_[static_cast<std::size_t>(k)]; }

    std::span<const double> samples() const { return samples_; }
    std::span<const double> weights() const { return weights_; }

    /// Index of the sample closest to pi.
    int nearest_index(double pi) const;

    bool same_geometry(const MomentumGrid& other, double tol = 1e-12) const;

  private:
    double mass_;
    Vec3 dir_;
    double spacing_;
    std::vector<double> samples_;
    std::vector<double> weights_;
};

/// One Gaussian component of a packet: amplitude * exp(-(pi-center)^2/(4 width^2)).
struct PacketComponent {
    double center = 0.0;
    double width = 1.0;
    cd amplitude = 1.0;
};

/// Complex amplitudes over a MomentumGrid, normalized so that
/// sum_k w_k |a_k|^2 = 1.
class Wavepacket {
  public:
    static Wavepacket gaussian(const MomentumGrid& grid, double center, double width);
    static Wavepacket superposition(const MomentumGrid& grid, std::span<const PacketComponent> parts);
    /// Unit weight-normalized amplitude on the sample nearest to pi, zero elsewhere.
    static Wavepacket sharp(const MomentumGrid& grid, double pi);
    static Wavepacket from_amplitudes(const MomentumGrid& grid, std::vector<cd> amplitudes);

    const MomentumGrid& grid() const { return grid_; }
    std::span<const cd> amplitudes() const { return amps_; }
    cd amplitude(int k) const { return amps_[static_cast<std::size_t>(k)]; }

    /// Set when a Gaussian component sits closer than five widths to a
    /// grid edge (its tails are clipped by the truncation).
    bool clipped() const { return clipped_; }

    /// Measure-weighted inner product sum_k w_k conj(a_k) b_k.
    cd inner_product(const Wavepacket& other) const;

  private:
    Wavepacket(MomentumGrid grid, std::vector<cd> amps, bool clipped);
    MomentumGrid grid_;
    std::vector<cd> amps_;
    bool clipped_ = false;
};

struct Masses {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
};

/// Measure-weighted squared norm of a rank-4 amplitude tensor laid out as
/// (i_first, i_second, a, b) with the two momentum grids supplying the weights.
double weighted_norm_sq(std::span<const cd> amps, const MomentumGrid& first, const MomentumGrid& second);

/// Two-particle state in the rest frame of particle A: amplitudes
/// psi(a, b, i_B, i_C) with a the spin label of A, b the rest-spin label of
/// B, and momentum grids for B (along e_x) and for the laboratory C.
class FrameAState {
  public:
    static FrameAState from_tensor(std::vector<cd> amps, MomentumGrid grid_b, MomentumGrid grid_c,
                                   Masses masses);

    const MomentumGrid& grid_b() const { return grid_b_; }
    const MomentumGrid& grid_c() const { return grid_c_; }
    const Masses& masses() const { return masses_; }

    int nb() const { return grid_b_.size(); }
    int nc() const { return grid_c_.size(); }

    cd amp(int a, int b, int ib, int ic) const { return amps_[index(a, b, ib, ic)]; }
    std::span<const cd> amplitudes() const { return amps_; }

    /// 2x2 spin block at a momentum pair; rows index a, columns index b.
    Mat2c spin_slice(int ib, int ic) const;

    double squared_norm() const;

    std::size_t index(int a, int b, int ib, int ic) const {
        return ((static_cast<std::size_t>(ib) * static_cast<std::size_t>(nc()) + static_cast<std::size_t>(ic)) * 2 +
                static_cast<std::size_t>(a)) * 2 + static_cast<std::size_t>(b);
    }

  private:
    FrameAState(std::vector<cd> amps, MomentumGrid grid_b, MomentumGrid grid_c, Masses masses);
    std::vector<cd> amps_;
    MomentumGrid grid_b_;
    MomentumGrid grid_c_;
    Masses masses_;
};

/// psi(a,b,i_B,i_C) = c_ab eta(i_B) phi(i_C). The coefficient table must
/// satisfy sum |c_ab|^2 = 1 to 1e-10. Rows of c index a, columns index b.
FrameAState assemble_frame_a_state(const Mat2c& c, const Wavepacket& eta, const Wavepacket& phi,
                                   double mass_a);

/// Spin-momentum-correlated generalization: one coefficient table per
/// eta sample. The assembled tensor must come out normalized.
FrameAState assemble_frame_a_state(std::span<const Mat2c> c_per_eta_sample, const Wavepacket& eta,
                                   const Wavepacket& phi, double mass_a);

enum class StateKind { collinear, noncollinear };

/// Two-particle state in the laboratory frame C: amplitudes
/// psi(a, b, i_A, i_B) on the co-moving relabeled grids. The A label i_A
/// reuses the C grid index; physical momenta are attached per index:
/// p_A(i_A) = -(m_A/m_C) pi_C(i_A) u and p_B(i_A, i_B) the boosted B momentum.
class FrameCState {
  public:
    FrameCState(StateKind kind, std::vector<cd> amps, MomentumGrid grid_b, MomentumGrid grid_c,
                Masses masses, std::vector<FourMomentum> p_a, std::vector<FourMomentum> p_b,
                std::vector<double> omega);

    StateKind kind() const { return kind_; }
    const MomentumGrid& grid_b() const { return grid_b_; }
    const MomentumGrid& grid_c() const { return grid_c_; }
    const Masses& masses() const { return masses_; }

    int na() const { return grid_c_.size(); }
    int nb() const { return grid_b_.size(); }

    cd amp(int a, int b, int ia, int ib) const { return amps_[index(a, b, ia, ib)]; }
    std::span<const cd> amplitudes() const { return amps_; }
    Mat2c spin_slice(int ia, int ib) const;

    const FourMomentum& p_a(int ia) const { return p_a_[static_cast<std::size_t>(ia)]; }
    const FourMomentum& p_b(int ia, int ib) const {
        return p_b_[static_cast<std::size_t>(ia) * static_cast<std::size_t>(nb()) + static_cast<std::size_t>(ib)];
    }
    /// Signed rotation angle about e_z applied to the b label at this pair.
    double omega(int ia, int ib) const {
        return omega_[static_cast<std::size_t>(ia) * static_cast<std::size_t>(nb()) + static_cast<std::size_t>(ib)];
    }
    std::span<const double> omegas() const { return omega_; }

    /// Joint quadrature weight w_C(i_A) w_B(i_B); the invariant measure is
    /// preserved exactly by the relabeling.
    double pair_weight(int ia, int ib) const { return grid_c_.weight(ia) * grid_b_.weight(ib); }

    double squared_norm() const;

    std::size_t index(int a, int b, int ia, int ib) const {
        return ((static_cast<std::size_t>(ia) * static_cast<std::size_t>(nb()) + static_cast<std::size_t>(ib)) * 2 +
                static_cast<std::size_t>(a)) * 2 + static_cast<std::size_t>(b);
    }

  private:
    StateKind kind_;
    std::vector<cd> amps_;
    MomentumGrid grid_b_;
    MomentumGrid grid_c_;
    Masses masses_;
    std::vector<FourMomentum> p_a_;
    std::vector<FourMomentum> p_b_;
    std::vector<double> omega_;
};

} // namespace relbell
