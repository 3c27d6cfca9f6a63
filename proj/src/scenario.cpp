#include "c2flow/scenario.hpp"

#include <cmath>

#include "c2flow/errors.hpp"

namespace c2flow {

GridSpec make_grid(const RunConfig& cfg) {
    return GridSpec::square(cfg.grid_n);
}

FluidState build_initial_state(const RunConfig& cfg) {
    const GridSpec g = make_grid(cfg);
    switch (cfg.scenario) {
    case Scenario::kolmogorov: {
        FluidState s = FluidState::rest(g);
        s.ax = Field2D::sampled(g, [&](double, double y) { return cfg.u0 * std::cos(y); });
        s.ay = Field2D::sampled(g, [&](double x, double) { return cfg.u0 * std::cos(x); });
        return s;
    }
    case Scenario::two_mode: {
        FluidState s = FluidState::rest(g);
        s.ax = Field2D::sampled(g, [&](double x, double y) {
            return cfg.u1 * std::sin(x) * std::sin(y) +
                   cfg.u2 * std::sin(2.0 * x) * std::sin(2.0 * y);
        });
        s.ay = Field2D::sampled(g, [&](double x, double y) {
            return cfg.u1 * std::cos(x) * std::cos(y) +
                   cfg.u2 * std::cos(2.0 * x) * std::cos(2.0 * y);
        });
        return s;
    }
    case Scenario::logistic:
        break;
    }
    throw ConfigError("build_initial_state: scenario has no fluid state");
}

std::pair<Field2D, Field2D> build_forcing(const RunConfig& cfg) {
    const GridSpec g = make_grid(cfg);
    Field2D fy(g);
    switch (cfg.scenario) {
    case Scenario::kolmogorov:
        return {Field2D::sampled(g, [&](double, double y) { return cfg.f0 * std::cos(y); }),
                std::move(fy)};
    case Scenario::two_mode:
        return {Field2D::sampled(g,
                                 [&](double, double y) {
                                     return cfg.f1 * std::cos(y) +
                                            cfg.f2 * std::cos(2.0 * y);
                                 }),
                std::move(fy)};
    case Scenario::logistic:
        break;
    }
    throw ConfigError("build_forcing: scenario has no forcing field");
}

PhysicsParams make_physics(const RunConfig& cfg) {
    auto [fx, fy] = build_forcing(cfg);
    return {cfg.nu, cfg.cs2, cfg.dt, std::move(fx), std::move(fy)};
}

} // namespace c2flow
