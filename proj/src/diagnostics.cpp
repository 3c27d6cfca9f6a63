#include "c2flow/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace c2flow {

const char* to_string(ProbeQuantity q) {
    switch (q) {
    case ProbeQuantity::vx: return "vx";
    case ProbeQuantity::vy: return "vy";
    case ProbeQuantity::rho: return "rho";
    case ProbeQuantity::chi: return "chi";
    case ProbeQuantity::omega: return "omega";
    }
    return "?";
}

ProbeSeries ProbeSeries::at(std::pair<double, double> location, ProbeQuantity q,
                            const GridSpec& grid) {
    return {location, nearest_node(location, grid), q, {}};
}

double reynolds(double u_s, int n, double nu) {
    return (u_s / std::numbers::pi) * n / nu;
}

double steady_velocity_scale(const Field2D& vx) {
    return vx.max_abs();
}

namespace {

double rms(const Field2D& f) {
    double acc = 0.0;
    for (size_t i = 0; i < f.size(); ++i)
        acc += f[i] * f[i];
    return std::sqrt(acc / static_cast<double>(f.size()));
}

} // namespace

double rel_l2_error(const Field2D& test, const Field2D& reference) {
    if (test.grid() != reference.grid())
        throw std::invalid_argument("rel_l2_error: grid mismatch");
    const double ref_norm = rms(reference);
    if (ref_norm == 0.0)
        throw std::domain_error("rel_l2_error: reference field is zero");
    double acc = 0.0;
    for (size_t i = 0; i < test.size(); ++i) {
        const double d = test[i] - reference[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(test.size())) / ref_norm;
}

double max_abs_error(const Field2D& test, const Field2D& reference) {
    if (test.grid() != reference.grid())
        throw std::invalid_argument("max_abs_error: grid mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < test.size(); ++i)
        worst = std::max(worst, std::fabs(test[i] - reference[i]));
    return worst;
}

SteadyResult steady_detector(std::span<const FluidState> history, int window, double tol) {
    if (window < 1)
        throw std::invalid_argument("steady_detector: window must be >= 1");
    SteadyResult result;
    const size_t len = history.size();
    for (size_t i = static_cast<size_t>(window); i < len; ++i) {
        const Field2D now = velocity(history[i]).first;
        const Field2D then = velocity(history[i - static_cast<size_t>(window)]).first;
        const double norm_then = rms(then);
        double change;
        if (norm_then == 0.0) {
            change = rms(now) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        } else {
            change = rel_l2_error(now, then);
        }
        if (change < tol && result.steps_to_steady < 0)
            result.steps_to_steady = static_cast<int>(i);
        if (i + 1 == len)
            result.steady = change < tol;
    }
    return result;
}

IncompressibilityReport incompressibility_report(const FluidState& s, double cs2, double u_s) {
    double fluct = 0.0;
    for (size_t i = 0; i < s.rho.size(); ++i)
        fluct = std::max(fluct, std::fabs(s.rho[i] - 1.0));
    return {u_s * u_s / cs2, fluct};
}

ComparisonReport make_comparison(const std::string& scenario, const FluidState& test,
                                 const FluidState& reference, double cs2, double nu,
                                 const SteadyResult& test_steady, int steps_to_steady) {
    ComparisonReport r;
    r.scenario = scenario;
    const Field2D vx_test = velocity(test).first;
    const Field2D vx_ref = velocity(reference).first;
    const double u_s = steady_velocity_scale(vx_ref);
    r.reynolds = reynolds(u_s, reference.grid().n, nu);
    r.rel_l2_error = rel_l2_error(vx_test, vx_ref);
    r.max_abs_error = max_abs_error(vx_test, vx_ref);
    const auto inc = incompressibility_report(test, cs2, u_s);
    r.mach2 = inc.mach2;
    r.max_density_fluct = inc.max_density_fluct;
    r.steady = test_steady.steady;
    r.steps_to_steady = steps_to_steady;
    return r;
}

void sample_probes(const FluidState& s, double t, std::span<ProbeSeries> series) {
    if (series.empty())
        return;
    bool need_velocity = false, need_omega = false;
    for (const auto& ps : series) {
        need_velocity |= ps.quantity == ProbeQuantity::vx || ps.quantity == ProbeQuantity::vy;
        need_omega |= ps.quantity == ProbeQuantity::omega;
    }
    Field2D vx, vy, w;
    if (need_velocity)
        std::tie(vx, vy) = velocity(s);
    if (need_omega)
        w = vorticity(s);
    for (auto& ps : series) {
        const auto [ix, iy] = ps.node;
        double value = 0.0;
        switch (ps.quantity) {
        case ProbeQuantity::vx: value = vx.at(ix, iy); break;
        case ProbeQuantity::vy: value = vy.at(ix, iy); break;
        case ProbeQuantity::rho: value = s.rho.at(ix, iy); break;
        case ProbeQuantity::chi: value = s.chi.at(ix, iy); break;
        case ProbeQuantity::omega: value = w.at(ix, iy); break;
        }
        ps.samples.emplace_back(t, value);
    }
}

} // namespace c2flow
