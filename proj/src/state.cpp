#include "relbell/state.hpp"

#include "relbell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace relbell {

namespace {
constexpr double kNormTol = 1e-10;
}

MomentumGrid::MomentumGrid(double mass, const Vec3& direction, double pi_min, double pi_max,
                           int n_points)
    : mass_(mass), dir_(direction) {
    if (!(mass > 0.0))
        throw std::invalid_argument("MomentumGrid: mass must be positive");
    if (std::abs(direction.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("MomentumGrid: direction must be a unit vector");
    if (n_points < 2)
        throw std::invalid_argument("MomentumGrid: need at least two samples");
    if (!std::isfinite(pi_min) || !std::isfinite(pi_max))
        throw std::invalid_argument("MomentumGrid: non-finite range");
    const double scale = std::max({1.0, std::abs(pi_min), std::abs(pi_max)});
    if (!(pi_max - pi_min > 1e-12 * scale))
        throw std::invalid_argument("MomentumGrid: degenerate range [pi_min, pi_max]");

    spacing_ = (pi_max - pi_min) / (n_points - 1);
    samples_.resize(static_cast<std::size_t>(n_points));
    weights_.resize(static_cast<std::size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        const double pi = pi_min + k * spacing_;
        const double trap = (k == 0 || k == n_points - 1) ? 0.5 : 1.0;
        samples_[static_cast<std::size_t>(k)] = pi;
        weights_[static_cast<std::size_t>(k)] =
            trap * spacing_ / (4.0 * std::numbers::pi * std::sqrt(mass * mass + pi * pi));
    }
}

double MomentumGrid::energy(int k) const {
    const double pi = sample(k);
    return std::sqrt(mass_ * mass_ + pi * pi);
}

int MomentumGrid::nearest_index(double pi) const {
    const double t = (pi - samples_.front()) / spacing_;
    const int k = static_cast<int>(std::lround(t));
    return std::clamp(k, 0, size() - 1);
}

bool MomentumGrid::same_geometry(const MomentumGrid& other, double tol) const {
    return size() == other.size() && std::abs(mass_ - other.mass_) <= tol &&
           (dir_ - other.dir_).norm() <= tol &&
           std::abs(samples_.front() - other.samples_.front()) <= tol * std::max(1.0, std::abs(samples_.front())) &&
           std::abs(samples_.back() - other.samples_.back()) <= tol * std::max(1.0, std::abs(samples_.back()));
}

Wavepacket::Wavepacket(MomentumGrid grid, std::vector<cd> amps, bool clipped)
    : grid_(std::move(grid)), amps_(std::move(amps)), clipped_(clipped) {}

Wavepacket Wavepacket::gaussian(const MomentumGrid& grid, double center, double width) {
    PacketComponent part{center, width, 1.0};
    return superposition(grid, std::span<const PacketComponent>(&part, 1));
}

Wavepacket Wavepacket::superposition(const MomentumGrid& grid,
                                     std::span<const PacketComponent> parts) {
    if (parts.empty())
        throw std::invalid_argument("Wavepacket: at least one component required");
    bool clipped = false;
    for (const auto& part : parts) {
        if (!(part.width > 0.0))
            throw std::invalid_argument("Wavepacket: width must be positive");
        if (part.center - 5.0 * part.width < grid.pi_min() ||
            part.center + 5.0 * part.width > grid.pi_max())
            clipped = true;
    }

    std::vector<cd> amps(static_cast<std::size_t>(grid.size()), cd(0.0));
    for (const auto& part : parts) {
        for (int k = 0; k < grid.size(); ++k) {
            const double d = grid.sample(k) - part.center;
            amps[static_cast<std::size_t>(k)] +=
                part.amplitude * std::exp(-d * d / (4.0 * part.width * part.width));
        }
    }

    double nrm = 0.0;
    for (int k = 0; k < grid.size(); ++k)
        nrm += grid.weight(k) * std::norm(amps[static_cast<std::size_t>(k)]);
    if (!(nrm > 0.0))
        throw std::invalid_argument("Wavepacket: packet support lies entirely outside the grid");
    const double inv = 1.0 / std::sqrt(nrm);
    for (auto& a : amps)
        a *= inv;
    return Wavepacket(grid, std::move(amps), clipped);
}

Wavepacket Wavepacket::sharp(const MomentumGrid& grid, double pi) {
    const int k = grid.nearest_index(pi);
    std::vector<cd> amps(static_cast<std::size_t>(grid.size()), cd(0.0));
    amps[static_cast<std::size_t>(k)] = 1.0 / std::sqrt(grid.weight(k));
    return Wavepacket(grid, std::move(amps), false);
}

Wavepacket Wavepacket::from_amplitudes(const MomentumGrid& grid, std::vector<cd> amplitudes) {
    if (static_cast<int>(amplitudes.size()) != grid.size())
        throw std::invalid_argument("Wavepacket: amplitude count does not match the grid");
    double nrm = 0.0;
    for (int k = 0; k < grid.size(); ++k)
        nrm += grid.weight(k) * std::norm(amplitudes[static_cast<std::size_t>(k)]);
    if (!(nrm > 0.0))
        throw std::invalid_argument("Wavepacket: zero amplitudes");
    const double inv = 1.0 / std::sqrt(nrm);
    for (auto& a : amplitudes)
        a *= inv;
    return Wavepacket(grid, std::move(amplitudes), false);
}

cd Wavepacket::inner_product(const Wavepacket& other) const {
    if (!grid_.same_geometry(other.grid_))
        throw config_error("Wavepacket::inner_product: grids differ");
    cd acc(0.0);
    for (int k = 0; k < grid_.size(); ++k)
        acc += grid_.weight(k) * std::conj(amps_[static_cast<std::size_t>(k)]) *
               other.amps_[static_cast<std::size_t>(k)];
    return acc;
}

double weighted_norm_sq(std::span<const cd> amps, const MomentumGrid& first,
                        const MomentumGrid& second) {
    const int n1 = first.size();
    const int n2 = second.size();
    if (amps.size() != static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2) * 4)
        throw std::invalid_argument("weighted_norm_sq: tensor size does not match the grids");
    double acc = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < n1; ++i) {
        const double w1 = first.weight(i);
        for (int j = 0; j < n2; ++j) {
            const double w = w1 * second.weight(j);
            double block = 0.0;
            for (int s = 0; s < 4; ++s)
                block += std::norm(amps[idx++]);
            acc += w * block;
        }
    }
    return acc;
}

FrameAState::FrameAState(std::vector<cd> amps, MomentumGrid grid_b, MomentumGrid grid_c,
                         Masses masses)
    : amps_(std::move(amps)), grid_b_(std::move(grid_b)), grid_c_(std::move(grid_c)),
      masses_(masses) {}

FrameAState FrameAState::from_tensor(std::vector<cd> amps, MomentumGrid grid_b,
                                     MomentumGrid grid_c, Masses masses) {
    if (!(masses.a > 0.0) || !(masses.b > 0.0) || !(masses.c > 0.0))
        throw std::invalid_argument("FrameAState: masses must be positive");
    const double nrm = weighted_norm_sq(amps, grid_b, grid_c);
    if (std::abs(nrm - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "FrameAState: tensor norm " << nrm << " deviates from 1 beyond " << kNormTol;
        throw std::invalid_argument(os.str());
    }
    return FrameAState(std::move(amps), std::move(grid_b), std::move(grid_c), masses);
}

Mat2c FrameAState::spin_slice(int ib, int ic) const {
    Mat2c m;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            m(a, b) = amp(a, b, ib, ic);
    return m;
}

double FrameAState::squared_norm() const {
    return weighted_norm_sq(amps_, grid_b_, grid_c_);
}

FrameAState assemble_frame_a_state(const Mat2c& c, const Wavepacket& eta, const Wavepacket& phi,
                                   double mass_a) {
    const double csum = c.squaredNorm();
    if (std::abs(csum - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "assemble_frame_a_state: sum |c_ab|^2 = " << csum << " deviates from 1 beyond "
           << kNormTol;
        throw std::invalid_argument(os.str());
    }
    std::vector<Mat2c> tables(static_cast<std::size_t>(eta.grid().size()), c);
    return assemble_frame_a_state(tables, eta, phi, mass_a);
}

FrameAState assemble_frame_a_state(std::span<const Mat2c> c_per_eta_sample, const Wavepacket& eta,
                                   const Wavepacket& phi, double mass_a) {
    const MomentumGrid& gb = eta.grid();
    const MomentumGrid& gc = phi.grid();
    if (c_per_eta_sample.size() != static_cast<std::size_t>(gb.size()))
        throw std::invalid_argument("assemble_frame_a_state: one coefficient table per eta sample required");

    std::vector<cd> amps(static_cast<std::size_t>(gb.size()) * static_cast<std::size_t>(gc.size()) * 4);
    std::size_t idx = 0;
    for (int ib = 0; ib < gb.size(); ++ib) {
        const Mat2c& c = c_per_eta_sample[static_cast<std::size_t>(ib)];
        const cd e = eta.amplitude(ib);
        for (int ic = 0; ic < gc.size(); ++ic) {
            const cd ep = e * phi.amplitude(ic);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    amps[idx++] = c(a, b) * ep;
        }
    }
    return FrameAState::from_tensor(std::move(amps), gb, gc,
                                    Masses{mass_a, gb.mass(), gc.mass()});
}

FrameCState::FrameCState(StateKind kind, std::vector<cd> amps, MomentumGrid grid_b,
                         MomentumGrid grid_c, Masses masses, std::vector<FourMomentum> p_a,
                         std::vector<FourMomentum> p_b, std::vector<double> omega)
    : kind_(kind), amps_(std::move(amps)), grid_b_(std::move(grid_b)),
      grid_c_(std::move(grid_c)), masses_(masses), p_a_(std::move(p_a)), p_b_(std::move(p_b)),
      omega_(std::move(omega)) {
    const auto na = static_cast<std::size_t>(grid_c_.size());
    const auto nb = static_cast<std::size_t>(grid_b_.size());
    if (amps_.size() != na * nb * 4 || p_a_.size() != na || p_b_.size() != na * nb ||
        omega_.size() != na * nb)
        throw std::invalid_argument("FrameCState: inconsistent table sizes");
}

Mat2c FrameCState::spin_slice(int ia, int ib) const {
    Mat2c m;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            m(a, b) = amp(a, b, ia, ib);
    return m;
}

double FrameCState::squared_norm() const {
    return weighted_norm_sq(amps_, grid_c_, grid_b_);
}

} // namespace relbell
