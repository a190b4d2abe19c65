#include "relbell/scenario.hpp"

#include "relbell/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace relbell {

namespace {

std::string trim(std::string_view v) {
    const auto first = v.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = v.find_last_not_of(" \t\r");
    return std::string(v.substr(first, last - first + 1));
}

[[noreturn]] void fail(int line, const std::string& msg) {
    std::ostringstream os;
    if (line > 0)
        os << "line " << line << ": ";
    os << msg;
    throw parse_error(os.str());
}

double parse_double(const std::string& text, int line, const std::string& key) {
    const std::string t = trim(text);
    double value = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        fail(line, "key '" + key + "': cannot parse number from '" + t + "'");
    return value;
}

std::vector<double> parse_list(const std::string& text, int line, const std::string& key) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        out.push_back(parse_double(item, line, key));
    if (out.empty())
        fail(line, "key '" + key + "': empty value");
    return out;
}

Vec3 parse_vec3(const std::string& text, int line, const std::string& key) {
    const auto v = parse_list(text, line, key);
    if (v.size() != 3)
        fail(line, "key '" + key + "': expected three comma-separated components");
    return Vec3(v[0], v[1], v[2]);
}

cd parse_complex(const std::string& text, int line, const std::string& key) {
    const auto v = parse_list(text, line, key);
    if (v.size() == 1)
        return cd(v[0], 0.0);
    if (v.size() == 2)
        return cd(v[0], v[1]);
    fail(line, "key '" + key + "': expected 're' or 're,im'");
}

struct RawDoc {
    std::map<std::string, std::pair<std::string, int>> entries; // key -> (value, line)

    bool has(const std::string& key) const { return entries.count(key) != 0; }

    std::optional<std::pair<std::string, int>> take(const std::string& key) {
        auto it = entries.find(key);
        if (it == entries.end())
            return std::nullopt;
        auto out = it->second;
        entries.erase(it);
        return out;
    }

    std::pair<std::string, int> require(const std::string& key) {
        auto v = take(key);
        if (!v)
            fail(0, "missing required key '" + key + "'");
        return *v;
    }
};

PacketSpec parse_packet(RawDoc& doc, const std::string& section) {
    PacketSpec p;
    auto [centers, cl] = doc.require(section + ".center");
    p.centers = parse_list(centers, cl, section + ".center");
    auto [widths, wl] = doc.require(section + ".width");
    p.widths = parse_list(widths, wl, section + ".width");
    if (auto amp = doc.take(section + ".amplitude"))
        p.amplitudes = parse_list(amp->first, amp->second, section + ".amplitude");
    else
        p.amplitudes.assign(p.centers.size(), 1.0);

    if (p.widths.size() != p.centers.size() || p.amplitudes.size() != p.centers.size())
        fail(wl, "key '" + section + ".*': center, width and amplitude lists must have equal length");
    const bool any_zero = std::any_of(p.widths.begin(), p.widths.end(), [](double w) { return w == 0.0; });
    if (any_zero && p.widths.size() != 1)
        fail(wl, "key '" + section + ".width': a sharp packet (width 0) must be a single component");
    for (double w : p.widths)
        if (w < 0.0)
            fail(wl, "key '" + section + ".width': widths must be non-negative");
    return p;
}

void validate(Scenario& s) {
    if (!(s.masses.a > 0.0) || !(s.masses.b > 0.0) || !(s.masses.c > 0.0))
        fail(0, "masses must be positive");
    if (s.grid.points < 16)
        fail(0, "grid.points must be at least 16");
    if (!(s.xi >= 0.0) || s.xi >= std::numbers::pi)
        fail(0, "geometry.xi must lie in [0, pi); model anti-parallel motion with negative momenta");
    if (s.mode == MotionMode::collinear && s.xi != 0.0)
        fail(0, "geometry.xi must be 0 in collinear mode");
    if (std::abs(s.spin_coefficients.squaredNorm() - 1.0) > 1e-10)
        fail(0, "spin coefficients must satisfy sum |c|^2 = 1");
    const std::array<std::pair<const char*, const Vec3*>, 4> settings = {
        {{"x1", &s.x1}, {"x2", &s.x2}, {"y1", &s.y1}, {"y2", &s.y2}}};
    for (const auto& [name, v] : settings)
        if (std::abs(v->norm() - 1.0) > 1e-9)
            fail(0, std::string("setting '") + name + "' must be a unit vector");
    if (s.grid.b_min.has_value() != s.grid.b_max.has_value() ||
        s.grid.c_min.has_value() != s.grid.c_max.has_value())
        fail(0, "grid range overrides need both min and max");

    s.warnings.clear();
    if (s.mode == MotionMode::noncollinear && s.xi == 0.0)
        s.warnings.push_back("mode is noncollinear but geometry.xi = 0: motion is degenerate-collinear, "
                             "no spin rotation occurs");
    if (s.frame == FrameChoice::a && s.settings_mode == SettingsMode::coherent)
        s.warnings.push_back("coherent settings apply only to laboratory-frame results; frame A uses the "
                             "plain settings");
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "mode", "frame", "seed", "geometry.xi", "mass.a", "mass.b", "mass.c",
        "spin.state", "spin.c.pp", "spin.c.pm", "spin.c.mp", "spin.c.mm",
        "settings.preset", "settings.mode", "settings.x1", "settings.x2", "settings.y1", "settings.y2",
        "packet.eta.center", "packet.eta.width", "packet.eta.amplitude",
        "packet.phi.center", "packet.phi.width", "packet.phi.amplitude",
        "grid.points", "grid.b.min", "grid.b.max", "grid.c.min", "grid.c.max"};
    return keys;
}

} // namespace

BellSettings Scenario::bell_settings() const {
    return {SettingVector(x1), SettingVector(x2), SettingVector(y1), SettingVector(y2),
            settings_mode};
}

Vec3 Scenario::lab_direction() const {
    if (xi == 0.0)
        return Vec3::UnitX();
    return Vec3(std::cos(xi), std::sin(xi), 0.0);
}

Scenario parse_scenario(std::string_view text) {
    RawDoc doc;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty())
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            fail(line_no, "expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end())
            fail(line_no, "unknown key '" + key + "'");
        if (doc.has(key))
            fail(line_no, "duplicate key '" + key + "'");
        if (value.empty())
            fail(line_no, "key '" + key + "': empty value");
        doc.entries.emplace(key, std::make_pair(value, line_no));
    }

    Scenario s;

    {
        auto [value, ln] = doc.require("mode");
        if (value == "collinear")
            s.mode = MotionMode::collinear;
        else if (value == "noncollinear")
            s.mode = MotionMode::noncollinear;
        else
            fail(ln, "key 'mode': expected 'collinear' or 'noncollinear'");
    }
    if (auto v = doc.take("frame")) {
        if (v->first == "A" || v->first == "a")
            s.frame = FrameChoice::a;
        else if (v->first == "C" || v->first == "c")
            s.frame = FrameChoice::c;
        else if (v->first == "both")
            s.frame = FrameChoice::both;
        else
            fail(v->second, "key 'frame': expected 'A', 'C' or 'both'");
    }
    if (auto v = doc.take("seed")) {
        const double d = parse_double(v->first, v->second, "seed");
        if (d < 0.0 || d != std::floor(d))
            fail(v->second, "key 'seed': expected a non-negative integer");
        s.seed = static_cast<std::uint64_t>(d);
    }
    if (auto v = doc.take("geometry.xi"))
        s.xi = parse_double(v->first, v->second, "geometry.xi");
    if (auto v = doc.take("mass.a"))
        s.masses.a = parse_double(v->first, v->second, "mass.a");
    if (auto v = doc.take("mass.b"))
        s.masses.b = parse_double(v->first, v->second, "mass.b");
    if (auto v = doc.take("mass.c"))
        s.masses.c = parse_double(v->first, v->second, "mass.c");

    const bool explicit_spin = doc.has("spin.c.pp") || doc.has("spin.c.pm") ||
                               doc.has("spin.c.mp") || doc.has("spin.c.mm");
    if (auto v = doc.take("spin.state")) {
        if (explicit_spin)
            fail(v->second, "give either spin.state or explicit spin.c.* coefficients, not both");
        if (v->first != "singlet")
            fail(v->second, "key 'spin.state': the only preset is 'singlet'");
        s.spin_preset = "singlet";
        s.spin_coefficients = Mat2c::Zero();
        s.spin_coefficients(0, 1) = 1.0 / std::numbers::sqrt2;
        s.spin_coefficients(1, 0) = -1.0 / std::numbers::sqrt2;
    } else if (explicit_spin) {
        auto coeff = [&](const char* key, int a, int b) {
            if (auto v2 = doc.take(key))
                s.spin_coefficients(a, b) = parse_complex(v2->first, v2->second, key);
        };
        coeff("spin.c.pp", 0, 0);
        coeff("spin.c.pm", 0, 1);
        coeff("spin.c.mp", 1, 0);
        coeff("spin.c.mm", 1, 1);
    } else {
        fail(0, "missing required key 'spin.state' (or explicit spin.c.* coefficients)");
    }

    const bool explicit_settings = doc.has("settings.x1") || doc.has("settings.x2") ||
                                   doc.has("settings.y1") || doc.has("settings.y2");
    if (auto v = doc.take("settings.preset")) {
        if (explicit_settings)
            fail(v->second, "give either settings.preset or explicit settings.*, not both");
        if (v->first != "optimal-singlet")
            fail(v->second, "key 'settings.preset': the only preset is 'optimal-singlet'");
        s.settings_preset = "optimal-singlet";
        const BellSettings preset = BellSettings::optimal_singlet();
        s.x1 = preset.x1.direction();
        s.x2 = preset.x2.direction();
        s.y1 = preset.y1.direction();
        s.y2 = preset.y2.direction();
    } else if (explicit_settings) {
        auto vec = [&](const char* key, Vec3& out) {
            auto v2 = doc.take(key);
            if (!v2)
                fail(0, std::string("missing required key '") + key + "'");
            out = parse_vec3(v2->first, v2->second, key);
        };
        vec("settings.x1", s.x1);
        vec("settings.x2", s.x2);
        vec("settings.y1", s.y1);
        vec("settings.y2", s.y2);
    } else {
        fail(0, "missing required key 'settings.preset' (or explicit settings.x1/x2/y1/y2)");
    }
    if (auto v = doc.take("settings.mode")) {
        if (v->first == "naive")
            s.settings_mode = SettingsMode::naive;
        else if (v->first == "coherent")
            s.settings_mode = SettingsMode::coherent;
        else
            fail(v->second, "key 'settings.mode': expected 'naive' or 'coherent'");
    }

    s.eta = parse_packet(doc, "packet.eta");
    s.phi = parse_packet(doc, "packet.phi");

    {
        auto [value, ln] = doc.require("grid.points");
        const double d = parse_double(value, ln, "grid.points");
        if (d != std::floor(d))
            fail(ln, "key 'grid.points': expected an integer");
        s.grid.points = static_cast<int>(d);
    }
    auto range = [&](const char* key, std::optional<double>& out) {
        if (auto v = doc.take(key))
            out = parse_double(v->first, v->second, key);
    };
    range("grid.b.min", s.grid.b_min);
    range("grid.b.max", s.grid.b_max);
    range("grid.c.min", s.grid.c_min);
    range("grid.c.max", s.grid.c_max);

    validate(s);
    return s;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

void apply_override(Scenario& s, const std::string& key, double value) {
    auto packet_component = [&](PacketSpec& p, std::vector<double> PacketSpec::* member) {
        if (p.centers.size() != 1)
            throw parse_error("sweep key '" + key + "' requires a single-component packet");
        (p.*member)[0] = value;
    };
    if (key == "geometry.xi")
        s.xi = value;
    else if (key == "mass.a")
        s.masses.a = value;
    else if (key == "mass.b")
        s.masses.b = value;
    else if (key == "mass.c")
        s.masses.c = value;
    else if (key == "packet.eta.center")
        packet_component(s.eta, &PacketSpec::centers);
    else if (key == "packet.eta.width")
        packet_component(s.eta, &PacketSpec::widths);
    else if (key == "packet.phi.center")
        packet_component(s.phi, &PacketSpec::centers);
    else if (key == "packet.phi.width")
        packet_component(s.phi, &PacketSpec::widths);
    else if (key == "grid.points")
        s.grid.points = static_cast<int>(std::lround(value));
    else
        throw parse_error("sweep key '" + key + "' is not a sweepable scalar");
    validate(s);
}

namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ",";
        out += fmt_g(v[i]);
    }
    return out;
}

} // namespace

std::string scenario_echo(const Scenario& s) {
    std::ostringstream os;
    os << "mode = " << (s.mode == MotionMode::collinear ? "collinear" : "noncollinear") << "\n";
    os << "frame = "
       << (s.frame == FrameChoice::a ? "A" : s.frame == FrameChoice::c ? "C" : "both") << "\n";
    os << "seed = " << s.seed << "\n";
    os << "geometry.xi = " << fmt_g(s.xi) << "\n";
    os << "mass.a = " << fmt_g(s.masses.a) << "\n";
    os << "mass.b = " << fmt_g(s.masses.b) << "\n";
    os << "mass.c = " << fmt_g(s.masses.c) << "\n";
    if (!s.spin_preset.empty()) {
        os << "spin.state = " << s.spin_preset << "\n";
    } else {
        auto coeff = [&](const char* key, int a, int b) {
            const cd c = s.spin_coefficients(a, b);
            os << key << " = " << fmt_g(c.real()) << "," << fmt_g(c.imag()) << "\n";
        };
        coeff("spin.c.pp", 0, 0);
        coeff("spin.c.pm", 0, 1);
        coeff("spin.c.mp", 1, 0);
        coeff("spin.c.mm", 1, 1);
    }
    if (!s.settings_preset.empty()) {
        os << "settings.preset = " << s.settings_preset << "\n";
    } else {
        auto vec = [&](const char* key, const Vec3& v) {
            os << key << " = " << fmt_g(v.x()) << "," << fmt_g(v.y()) << "," << fmt_g(v.z()) << "\n";
        };
        vec("settings.x1", s.x1);
        vec("settings.x2", s.x2);
        vec("settings.y1", s.y1);
        vec("settings.y2", s.y2);
    }
    os << "settings.mode = " << (s.settings_mode == SettingsMode::naive ? "naive" : "coherent")
       << "\n";
    os << "packet.eta.center = " << fmt_list(s.eta.centers) << "\n";
    os << "packet.eta.width = " << fmt_list(s.eta.widths) << "\n";
    os << "packet.eta.amplitude = " << fmt_list(s.eta.amplitudes) << "\n";
    os << "packet.phi.center = " << fmt_list(s.phi.centers) << "\n";
    os << "packet.phi.width = " << fmt_list(s.phi.widths) << "\n";
    os << "packet.phi.amplitude = " << fmt_list(s.phi.amplitudes) << "\n";
    os << "grid.points = " << s.grid.points << "\n";
    if (s.grid.b_min)
        os << "grid.b.min = " << fmt_g(*s.grid.b_min) << "\n";
    if (s.grid.b_max)
        os << "grid.b.max = " << fmt_g(*s.grid.b_max) << "\n";
    if (s.grid.c_min)
        os << "grid.c.min = " << fmt_g(*s.grid.c_min) << "\n";
    if (s.grid.c_max)
        os << "grid.c.max = " << fmt_g(*s.grid.c_max) << "\n";
    return os.str();
}

} // namespace relbell
