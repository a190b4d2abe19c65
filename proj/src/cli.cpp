#include "relbell/cli.hpp"

#include "relbell/errors.hpp"
#include "relbell/runner.hpp"
#include "relbell/version.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace relbell {

namespace {

SweepSpec parse_sweep_flag(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw parse_error("--sweep expects key=start:stop:steps");
    SweepSpec spec;
    spec.key = text.substr(0, eq);
    const std::string rhs = text.substr(eq + 1);
    const auto c1 = rhs.find(':');
    const auto c2 = rhs.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw parse_error("--sweep expects key=start:stop:steps");
    try {
        spec.start = std::stod(rhs.substr(0, c1));
        spec.stop = std::stod(rhs.substr(c1 + 1, c2 - c1 - 1));
        spec.steps = std::stoi(rhs.substr(c2 + 1));
    } catch (const std::exception&) {
        throw parse_error("--sweep: cannot parse '" + rhs + "' as start:stop:steps");
    }
    return spec;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{std::string(kToolName) +
                 ": CHSH-Bell tests for relativistic spin-1/2 pairs under "
                 "quantum-reference-frame changes"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    std::string scenario_path;
    std::string out_dir = ".";
    std::string sweep_text;
    bool force_oracle = false;
    bool grid_check = false;

    app.add_option("--scenario", scenario_path, "Scenario file (key = value format)")->required();
    app.add_option("--out", out_dir, "Output directory for summary.txt / results.csv / sweep.csv");
    app.add_option("--sweep", sweep_text, "Sweep one scalar key: key=start:stop:steps");
    app.add_flag("--oracle", force_oracle,
                 "Evaluate every Wigner angle by full boost factorization");
    app.add_flag("--grid-check", grid_check, "Re-run at doubled grid points and compare S");

    std::vector<const char*> argv;
    argv.push_back(kToolName);
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Scenario scenario = parse_scenario_file(scenario_path);
        const RunOptions options{force_oracle, grid_check};

        const Report report = run_scenario(scenario, options);
        const auto written = emit_report(report, out_dir);

        for (const auto& row : report.rows)
            std::cout << "frame=" << (row.frame == Frame::A ? "A" : "C")
                      << " mode=" << (row.mode == SettingsMode::naive ? "naive" : "coherent")
                      << " S=" << row.chsh.s << " |S|=" << row.chsh.abs_s() << "\n";
        for (const auto& w : report.warnings)
            std::cout << "warning: " << w << "\n";

        if (!sweep_text.empty()) {
            const SweepSpec spec = parse_sweep_flag(sweep_text);
            const SweepResult sweep = run_sweep(scenario, spec, RunOptions{force_oracle, false});
            const auto path = emit_sweep_data(sweep, out_dir);
            std::cout << "sweep: " << sweep.points.size() << " points -> " << path.string() << "\n";
        }

        for (const auto& p : written)
            std::cout << "wrote " << p.string() << "\n";

        if (!report.converged) {
            std::cerr << "error: grid check did not converge (see summary.txt)\n";
            return 3;
        }
        return 0;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const consistency_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace relbell
