#pragma once

#include "relbell/bell.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace relbell {

struct ResultRow {
    Frame frame = Frame::A;
    SettingsMode mode = SettingsMode::naive;
    ChshResult chsh;
    double horodecki = 0.0;      // optimal |S| certificate for this row's effective tensor
    double mean_cos_omega = 1.0; // measure-weighted mean cos of the applied rotation
    int grid_points = 0;
};

struct ConvergenceCheck {
    int points_coarse = 0;
    int points_fine = 0;
    double s_coarse = 0.0;
    double s_fine = 0.0;
    bool converged = true; // |s_fine - s_coarse| <= 1e-6
};

struct Report {
    std::string version;
    std::uint64_t seed = 0;
    std::string scenario_text; // canonical echo
    std::vector<std::string> warnings;
    Mat3 correlation_tensor = Mat3::Zero(); // rest frame of A
    std::vector<ResultRow> rows;

    // Wigner angle over the weighted grid pairs of the laboratory state
    // (all zero when no rotation occurs).
    double omega_min = 0.0, omega_mean = 0.0, omega_max = 0.0;

    std::vector<ConvergenceCheck> convergence; // aligned with rows; empty unless requested
    bool converged = true;
};

/// Writes summary.txt (human-readable) and results.csv (fixed header,
/// 17-significant-digit floats) into out_dir. Returns the paths written.
std::vector<std::filesystem::path> emit_report(const Report& report,
                                               const std::filesystem::path& out_dir);

struct SweepPoint {
    double value = 0.0;
    Report report;
};

struct SweepResult {
    std::string key;
    std::vector<SweepPoint> points;
};

/// Writes sweep.csv: one row per sweep point and result line, carrying |S|
/// and the mean cos of the rotation angle against the swept value.
std::filesystem::path emit_sweep_data(const SweepResult& sweep,
                                      const std::filesystem::path& out_dir);

} // namespace relbell
