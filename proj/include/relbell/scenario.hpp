#pragma once

#include "relbell/bell.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relbell {

enum class FrameChoice { a, c, both };
enum class MotionMode { collinear, noncollinear };

/// One momentum-space packet: a list of Gaussian components, or a single
/// sharp momentum when the width is zero.
struct PacketSpec {
    std::vector<double> centers;
    std::vector<double> widths;     // all positive, or a single zero (sharp)
    std::vector<double> amplitudes; // defaults to 1 per component

    bool sharp() const { return widths.size() == 1 && widths[0] == 0.0; }
};

struct GridSpec {
    int points = 0;
    std::optional<double> b_min, b_max, c_min, c_max; // auto-derived from packets when absent
};

/// A fully validated experiment description parsed from the flat
/// key = value scenario format (see README for the key reference).
struct Scenario {
    Masses masses{1.0, 1.0, 1000.0};
    double xi = 0.0; // angle between B's and the laboratory's motion, radians
    MotionMode mode = MotionMode::collinear;
    FrameChoice frame = FrameChoice::both;
    SettingsMode settings_mode = SettingsMode::naive;

    Mat2c spin_coefficients = Mat2c::Zero();
    std::string spin_preset; // "singlet" or empty for explicit coefficients

    Vec3 x1, x2, y1, y2;
    std::string settings_preset; // "optimal-singlet" or empty

    PacketSpec eta; // particle B packet, grid along e_x
    PacketSpec phi; // laboratory packet, grid along u

    GridSpec grid;
    std::uint64_t seed = 0;

    std::vector<std::string> warnings; // non-fatal findings from parsing

    BellSettings bell_settings() const;
    Vec3 lab_direction() const; // (cos xi, sin xi, 0); e_x when xi = 0
};

/// Parses and validates a scenario document. Unknown keys, missing
/// required keys, non-unit settings and non-normalized spin coefficients
/// are rejected with the offending key and line named in the message.
Scenario parse_scenario(std::string_view text);
Scenario parse_scenario_file(const std::filesystem::path& path);

/// Overrides one numeric scalar key (used by parameter sweeps) and
/// re-validates. Throws parse_error for unsupported keys.
void apply_override(Scenario& s, const std::string& key, double value);

/// Canonical key = value echo of a scenario, used in reports.
std::string scenario_echo(const Scenario& s);

} // namespace relbell
