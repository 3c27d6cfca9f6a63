#pragma once

#include <iosfwd>

#include "c2flow/config.hpp"

namespace c2flow {

enum ExitCode : int {
    exit_ok = 0,
    exit_verify_mismatch = 1,
    exit_config = 2,
    exit_divergence = 3,
    exit_io = 4,
};

/// Executes the configured run end to end: shared initial condition, one pass
/// per selected solver with per-step probe sampling, snapshots at the
/// configured cadence, final-state comparisons, and artifact emission
/// (probes.csv, snapshot_*.csv, report.json, plot_*.svg) into cfg.output_dir.
/// On divergence the partial outputs are written before returning.
int run(const RunConfig& cfg, std::ostream& log);

/// Replays the run into a scratch directory and compares every produced file
/// against the copy in cfg.output_dir (numeric tokens within verify_rtol,
/// SVG byte-exact).
int verify(const RunConfig& cfg, std::ostream& log);

} // namespace c2flow
