#include "relbell/runner.hpp"

#include "relbell/errors.hpp"
#include "relbell/qrf.hpp"
#include "relbell/version.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace relbell {

namespace {

std::pair<double, double> auto_range(const PacketSpec& p, int points) {
    if (p.sharp()) {
        // Place the sharp momentum on a grid sample: center the window and
        // shift it so an integer number of spacings reaches the center.
        const double c = p.centers[0];
        const double half = std::max(1.0, 0.1 * std::abs(c));
        const double spacing = 2.0 * half / (points - 1);
        const double start = c - std::round((points - 1) / 2.0) * spacing;
        return {start, start + (points - 1) * spacing};
    }
    double lo = p.centers[0], hi = p.centers[0];
    for (std::size_t i = 0; i < p.centers.size(); ++i) {
        lo = std::min(lo, p.centers[i] - 10.0 * p.widths[i]);
        hi = std::max(hi, p.centers[i] + 10.0 * p.widths[i]);
    }
    return {lo, hi};
}

MomentumGrid make_grid(const Scenario& s, const PacketSpec& packet, double mass, const Vec3& dir,
                       const std::optional<double>& lo, const std::optional<double>& hi,
                       const char* which) {
    const auto fallback = auto_range(packet, s.grid.points);
    const double gmin = lo.value_or(fallback.first);
    const double gmax = hi.value_or(fallback.second);
    MomentumGrid grid(mass, dir, gmin, gmax, s.grid.points);

    if (!packet.sharp()) {
        double min_width = packet.widths[0];
        for (double w : packet.widths)
            min_width = std::min(min_width, w);
        if (grid.spacing() > min_width) {
            const int needed = static_cast<int>(std::ceil((gmax - gmin) / min_width)) + 1;
            std::ostringstream os;
            os << which << ": grid spacing " << grid.spacing() << " cannot resolve packet width "
               << min_width << "; increase grid.points to at least " << needed;
            throw convergence_error(os.str());
        }
    }
    return grid;
}

Wavepacket make_packet(const MomentumGrid& grid, const PacketSpec& p, const char* which) {
    if (p.sharp())
        return Wavepacket::sharp(grid, p.centers[0]);
    std::vector<PacketComponent> parts;
    parts.reserve(p.centers.size());
    for (std::size_t i = 0; i < p.centers.size(); ++i)
        parts.push_back({p.centers[i], p.widths[i], cd(p.amplitudes[i], 0.0)});
    Wavepacket packet = Wavepacket::superposition(grid, parts);
    if (packet.clipped()) {
        const auto suggested = auto_range(p, grid.size());
        std::ostringstream os;
        os << which << ": packet support is clipped by the grid range [" << grid.pi_min() << ", "
           << grid.pi_max() << "]; suggested range [" << suggested.first << ", "
           << suggested.second << "]";
        throw convergence_error(os.str());
    }
    return packet;
}

/// Per-pair comparison of the stored rotation against the boost-composition
/// factorization.
void oracle_cross_check(const FrameCState& state) {
    const MomentumGrid& gb = state.grid_b();
    const MomentumGrid& gc = state.grid_c();
    const Masses& m = state.masses();
    double worst_cos = 0.0;
    double worst_mat = 0.0;
    for (int ia = 0; ia < state.na(); ++ia) {
        for (int ib = 0; ib < state.nb(); ++ib) {
            if (gb.sample(ib) == 0.0 || gc.sample(ia) == 0.0)
                continue;
            const auto [p, rot] =
                wigner_from_composition(-gc.momentum(ia), m.c, gb.momentum(ib), m.b);
            (void)p;
            const double w = state.omega(ia, ib);
            worst_cos = std::max(worst_cos, std::abs(std::cos(w) - std::cos(rot.angle)));
            const Mat3 stored = Eigen::AngleAxisd(w, Vec3::UnitZ()).toRotationMatrix();
            worst_mat = std::max(worst_mat, (stored - rot.matrix).cwiseAbs().maxCoeff());
        }
    }
    if (worst_cos > 1e-12 || worst_mat > 1e-9) {
        std::ostringstream os;
        os << "wigner cross-check failed: max |cos| deviation " << worst_cos
           << ", max rotation-matrix deviation " << worst_mat;
        throw consistency_error(os.str());
    }
}

struct OmegaStats {
    double min = 0.0, mean = 0.0, max = 0.0, mean_cos = 1.0;
};

OmegaStats omega_stats(const FrameCState& state) {
    OmegaStats st;
    st.min = state.omega(0, 0);
    st.max = st.min;
    double mean = 0.0, mean_cos = 0.0;
    for (int ia = 0; ia < state.na(); ++ia) {
        for (int ib = 0; ib < state.nb(); ++ib) {
            const double w = state.omega(ia, ib);
            st.min = std::min(st.min, w);
            st.max = std::max(st.max, w);
            double prob = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    prob += std::norm(state.amp(a, b, ia, ib));
            prob *= state.pair_weight(ia, ib);
            mean += prob * w;
            mean_cos += prob * std::cos(w);
        }
    }
    st.mean = mean;
    st.mean_cos = mean_cos;
    return st;
}

struct CoreResult {
    std::vector<ResultRow> rows;
    Mat3 tensor = Mat3::Zero();
    OmegaStats stats;
};

CoreResult core_run(const Scenario& s, int points, bool force_oracle) {
    Scenario local = s;
    local.grid.points = points;

    const MomentumGrid grid_b = make_grid(local, local.eta, local.masses.b, Vec3::UnitX(),
                                          local.grid.b_min, local.grid.b_max, "packet.eta");
    const MomentumGrid grid_c = make_grid(local, local.phi, local.masses.c, local.lab_direction(),
                                          local.grid.c_min, local.grid.c_max, "packet.phi");
    const Wavepacket eta = make_packet(grid_b, local.eta, "packet.eta");
    const Wavepacket phi = make_packet(grid_c, local.phi, "packet.phi");

    const FrameAState state = assemble_frame_a_state(local.spin_coefficients, eta, phi, local.masses.a);

    CoreResult out;
    out.tensor = correlation_tensor_frame_a(state).entries();

    if (local.frame == FrameChoice::a || local.frame == FrameChoice::both) {
        BellSettings settings = local.bell_settings();
        settings.mode = SettingsMode::naive;
        ResultRow row;
        row.frame = Frame::A;
        row.mode = SettingsMode::naive;
        row.chsh = chsh(state, settings);
        row.horodecki = horodecki_bound(CorrelationTensor(out.tensor));
        row.mean_cos_omega = 1.0;
        row.grid_points = points;
        out.rows.push_back(row);
    }

    if (local.frame == FrameChoice::c || local.frame == FrameChoice::both) {
        const bool rotates = local.mode == MotionMode::noncollinear && local.xi != 0.0;
        const FrameCState lab =
            rotates ? transform_to_lab_noncollinear(state, force_oracle ? WignerMethod::matrix_oracle
                                                                        : WignerMethod::closed_form)
                    : transform_to_lab_collinear(state);
        if (rotates) {
            oracle_cross_check(lab);
            out.stats = omega_stats(lab);
        }

        ResultRow row;
        row.frame = Frame::C;
        row.mode = local.settings_mode;
        row.chsh = chsh(lab, local.bell_settings());
        row.horodecki = horodecki_bound(effective_correlation_tensor(lab, local.settings_mode));
        row.mean_cos_omega = out.stats.mean_cos;
        row.grid_points = points;
        out.rows.push_back(row);
    }

    return out;
}

} // namespace

Report run_scenario(const Scenario& scenario, const RunOptions& options) {
    const CoreResult core = core_run(scenario, scenario.grid.points, options.force_oracle);

    Report report;
    report.version = std::string(kToolName) + " " + kToolVersion;
    report.seed = scenario.seed;
    report.scenario_text = scenario_echo(scenario);
    report.warnings = scenario.warnings;
    report.correlation_tensor = core.tensor;
    report.rows = core.rows;
    report.omega_min = core.stats.min;
    report.omega_mean = core.stats.mean;
    report.omega_max = core.stats.max;

    if (options.grid_check) {
        const CoreResult fine = core_run(scenario, scenario.grid.points * 2, options.force_oracle);
        for (std::size_t i = 0; i < core.rows.size(); ++i) {
            ConvergenceCheck check;
            check.points_coarse = scenario.grid.points;
            check.points_fine = scenario.grid.points * 2;
            check.s_coarse = core.rows[i].chsh.s;
            check.s_fine = fine.rows[i].chsh.s;
            check.converged = std::abs(check.s_fine - check.s_coarse) <= 1e-6;
            report.convergence.push_back(check);
            report.converged = report.converged && check.converged;
        }
    }
    return report;
}

SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec, const RunOptions& options) {
    if (spec.steps < 1)
        throw parse_error("sweep: steps must be at least 1");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i)
        values.push_back(spec.steps == 1
                             ? spec.start
                             : spec.start + (spec.stop - spec.start) * i / (spec.steps - 1));

    // Validate the key once up front so a bad sweep fails before any work.
    {
        Scenario probe = scenario;
        apply_override(probe, spec.key, values.front());
    }

    std::vector<SweepPoint> points(values.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size())
                return;
            try {
                Scenario local = scenario;
                apply_override(local, spec.key, values[i]);
                points[i] = SweepPoint{values[i], run_scenario(local, options)};
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };

    const std::size_t n_threads =
        std::min<std::size_t>(values.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);

    return SweepResult{spec.key, std::move(points)};
}

} // namespace relbell
