#pragma once

#include "relbell/report.hpp"
#include "relbell/scenario.hpp"

namespace relbell {

struct RunOptions {
    bool force_oracle = false; // evaluate every Wigner angle by matrix factorization
    bool grid_check = false;   // re-run at doubled grid points and compare S
};

/// Builds grids and packets, assembles the rest-frame state, evaluates the
/// requested frames and modes, and cross-checks the closed-form rotation
/// angles against the matrix factorization for non-collinear runs.
/// Deterministic for a fixed scenario and seed. Throws convergence_error
/// when the grid cannot support the packets.
Report run_scenario(const Scenario& scenario, const RunOptions& options = {});

struct SweepSpec {
    std::string key;
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;
};

/// Runs the scenario once per sweep value (in parallel), with the swept key
/// overridden. Reports are ordered by sweep point.
SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec,
                      const RunOptions& options = {});

} // namespace relbell
