#pragma once

#include <string>
#include <utility>
#include <vector>

#include "c2flow/diagnostics.hpp"

namespace c2flow {

enum class Scenario { logistic, kolmogorov, two_mode };
enum class Solver { c2, nshj, ns };

const char* to_string(Scenario s);
const char* to_string(Solver s);

/// One batch run, fully deterministic (no seeds anywhere).
struct RunConfig {
    Scenario scenario = Scenario::kolmogorov;
    std::vector<Solver> solvers; // executed in this order

    // grid / stepping
    int grid_n = 64;
    double dt = 0.0;
    int steps = 0;
    double nu = 0.0;
    double cs2 = 0.0;

    // kolmogorov scenario
    double u0 = 0.0;
    double f0 = 0.0;

    // two_mode scenario
    double u1 = 0.0, u2 = 0.0, f1 = 0.0, f2 = 0.0;

    // logistic scenario (a < 0 means "derive a from g2")
    double a = -1.0, b = 1.0, f = 1.0, g2 = 0.1, x0 = 0.0;

    std::vector<std::pair<double, double>> probes;
    std::vector<ProbeQuantity> probe_quantities;
    int snapshot_every = 500;
    std::string output_dir = "out";
    bool allow_large_memory = false;
    bool quiet = false;

    // steady detection
    double steady_tol = 1e-3;

    // numeric tolerance used by the verify subcommand
    double verify_rtol = 1e-12;

    /// Decay rate actually used for the logistic scenario.
    double logistic_a() const;
    /// T = 1 / (nu k^2) at the forced wavenumber k = 1.
    double characteristic_time() const { return 1.0 / nu; }

    bool has_solver(Solver s) const;
};

/// Scenario defaults mirroring the reference runs; config keys override them.
RunConfig default_config(Scenario scenario);

/// Flat "key = value" text with '#' comments. Unknown keys are errors.
RunConfig parse_config_text(const std::string& text, const std::string& source_name);
RunConfig parse_config_file(const std::string& path);

} // namespace c2flow
