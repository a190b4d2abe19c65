#include "relbell/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace relbell {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* frame_name(Frame f) { return f == Frame::A ? "A" : "C"; }
const char* mode_name(SettingsMode m) { return m == SettingsMode::naive ? "naive" : "coherent"; }

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // fixed \n line endings
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return out;
}

void write_results_csv(const Report& r, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "frame,mode,E11,E12,E21,E22,S,chsh_max_horodecki,mean_cos_omega,grid_points\n";
    for (const auto& row : r.rows) {
        out << frame_name(row.frame) << ',' << mode_name(row.mode) << ',' << fmt(row.chsh.e11)
            << ',' << fmt(row.chsh.e12) << ',' << fmt(row.chsh.e21) << ',' << fmt(row.chsh.e22)
            << ',' << fmt(row.chsh.s) << ',' << fmt(row.horodecki) << ','
            << fmt(row.mean_cos_omega) << ',' << row.grid_points << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_summary(const Report& r, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << r.version << "\n";
    out << "seed: " << r.seed << "\n\n";

    out << "[scenario]\n" << r.scenario_text << "\n";

    if (!r.warnings.empty()) {
        out << "[warnings]\n";
        for (const auto& w : r.warnings)
            out << "- " << w << "\n";
        out << "\n";
    }

    out << "[correlation tensor, rest frame of A]\n";
    for (int i = 0; i < 3; ++i) {
        out << " ";
        for (int j = 0; j < 3; ++j)
            out << " " << fmt(r.correlation_tensor(i, j));
        out << "\n";
    }
    out << "\n";

    out << "[results]\n";
    for (const auto& row : r.rows) {
        out << "frame=" << frame_name(row.frame) << " mode=" << mode_name(row.mode)
            << " E11=" << fmt(row.chsh.e11) << " E12=" << fmt(row.chsh.e12)
            << " E21=" << fmt(row.chsh.e21) << " E22=" << fmt(row.chsh.e22)
            << " S=" << fmt(row.chsh.s) << " |S|=" << fmt(row.chsh.abs_s())
            << " horodecki=" << fmt(row.horodecki) << " mean_cos_omega=" << fmt(row.mean_cos_omega)
            << " points=" << row.grid_points << "\n";
    }
    out << "\n";

    out << "[wigner angle over grid pairs, rad]\n";
    out << "min=" << fmt(r.omega_min) << " mean=" << fmt(r.omega_mean)
        << " max=" << fmt(r.omega_max) << "\n";

    if (!r.convergence.empty()) {
        out << "\n[grid check]\n";
        for (std::size_t i = 0; i < r.convergence.size(); ++i) {
            const auto& c = r.convergence[i];
            const auto& row = r.rows[i];
            out << "frame=" << frame_name(row.frame) << " mode=" << mode_name(row.mode) << " S("
                << c.points_coarse << ")=" << fmt(c.s_coarse) << " S(" << c.points_fine
                << ")=" << fmt(c.s_fine) << " |dS|=" << fmt(std::abs(c.s_fine - c.s_coarse)) << " "
                << (c.converged ? "converged" : "NON-CONVERGED") << "\n";
        }
        out << "status: " << (r.converged ? "converged" : "NON-CONVERGED") << "\n";
    }
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

} // namespace

std::vector<std::filesystem::path> emit_report(const Report& report,
                                               const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto summary = out_dir / "summary.txt";
    const auto results = out_dir / "results.csv";
    write_summary(report, summary);
    write_results_csv(report, results);
    return {summary, results};
}

std::filesystem::path emit_sweep_data(const SweepResult& sweep,
                                      const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto path = out_dir / "sweep.csv";
    auto out = open_out(path);
    out << "sweep_key,sweep_value,frame,mode,S,abs_S,mean_cos_omega,grid_points\n";
    for (const auto& point : sweep.points) {
        for (const auto& row : point.report.rows) {
            out << sweep.key << ',' << fmt(point.value) << ',' << frame_name(row.frame) << ','
                << mode_name(row.mode) << ',' << fmt(row.chsh.s) << ',' << fmt(row.chsh.abs_s())
                << ',' << fmt(row.mean_cos_omega) << ',' << row.grid_points << '\n';
        }
    }
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
    return path;
}

} // namespace relbell
