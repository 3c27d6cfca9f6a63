#pragma once

#include <utility>

#include "c2flow/config.hpp"
#include "c2flow/nshj.hpp"

namespace c2flow {

/// Grid implied by the config (box 2 pi).
GridSpec make_grid(const RunConfig& cfg);

/// Initial fields for the fluid scenarios:
///   kolmogorov: rho = 1, chi = 0, Ax = u0 cos(y), Ay = u0 cos(x)
///   two_mode:   rho = 1, chi = 0 and the whole two-mode velocity placed in A,
///               so v = grad(chi) + A matches it exactly.
/// Throws ConfigError for the logistic scenario (no fluid state there).
FluidState build_initial_state(const RunConfig& cfg);

/// Body force: kolmogorov fx = f0 cos(y); two_mode fx = f1 cos(y) + f2 cos(2y);
/// fy = 0 in both.
std::pair<Field2D, Field2D> build_forcing(const RunConfig& cfg);

/// Forcing + stepping bundled for the solvers.
PhysicsParams make_physics(const RunConfig& cfg);

} // namespace c2flow
