#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "c2flow/grid.hpp"
#include "c2flow/nshj.hpp"

namespace c2flow {

enum class ProbeQuantity { vx, vy, rho, chi, omega };

const char* to_string(ProbeQuantity q);

/// Time series of one quantity at one spatial probe (nearest grid node).
struct ProbeSeries {
    std::pair<double, double> location; // physical coordinates
    std::pair<int, int> node;
    ProbeQuantity quantity = ProbeQuantity::vx;
    std::vector<std::pair<double, double>> samples; // (time, value), time increasing

    static ProbeSeries at(std::pair<double, double> location, ProbeQuantity q,
                          const GridSpec& grid);
};

/// Re = (U_s / pi) N / nu with U_s the steady peak velocity amplitude.
double reynolds(double u_s, int n, double nu);

/// Peak amplitude of the steady profile: max over nodes of |vx|.
double steady_velocity_scale(const Field2D& vx);

/// ||test - reference||_2 / ||reference||_2 with the RMS norm over nodes
/// (a global norm ratio, never a pointwise division). Throws domain_error
/// when the reference field vanishes.
double rel_l2_error(const Field2D& test, const Field2D& reference);

/// max over nodes of |test - reference| (code units, no normalization).
double max_abs_error(const Field2D& test, const Field2D& reference);

struct SteadyResult {
    bool steady = false;
    int steps_to_steady = -1; // index into the snapshot sequence, -1 when never
};

/// Steady when rel_l2_error(vx[i], vx[i - window]) < tol at the last snapshot
/// pair; steps_to_steady is the first index where the criterion holds.
/// window counts snapshots, so callers sampling every k-th step should divide
/// their step window by k.
SteadyResult steady_detector(std::span<const FluidState> history, int window, double tol);

struct IncompressibilityReport {
    double mach2;              // u_s^2 / cs2
    double max_density_fluct;  // max |rho - 1|
};

IncompressibilityReport incompressibility_report(const FluidState& s, double cs2, double u_s);

/// Appends (t, value at the series' node) to every series from one state.
/// Velocity and vorticity planes are reconstructed once per call.
void sample_probes(const FluidState& s, double t, std::span<ProbeSeries> series);

/// Steady-comparison metrics for one solver pair at the final state.
struct ComparisonReport {
    std::string scenario;
    double reynolds = 0.0;
    double rel_l2_error = 0.0;
    double max_abs_error = 0.0;
    double mach2 = 0.0;
    double max_density_fluct = 0.0;
    bool steady = false;
    int steps_to_steady = -1;
};

/// Fills a ComparisonReport from two final states: velocity errors on vx,
/// Reynolds number from the reference state's peak velocity, density metrics
/// from the test state, steadiness passed through from the test solver's
/// history (steps_to_steady in solver steps).
ComparisonReport make_comparison(const std::string& scenario, const FluidState& test,
                                 const FluidState& reference, double cs2, double nu,
                                 const SteadyResult& test_steady, int steps_to_steady);

} // namespace c2flow
