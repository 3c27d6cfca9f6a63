#pragma once

#include <functional>
#include <utility>

#include "c2flow/grid.hpp"
#include "c2flow/kernels.hpp"

namespace c2flow {

/// The four fields of the Hamilton-Jacobi form of the fluid equations at one
/// instant: density, velocity scalar potential, and the vector field carrying
/// the vorticity.
struct FluidState {
    Field2D rho;
    Field2D chi;
    Field2D ax;
    Field2D ay;

    const GridSpec& grid() const { return rho.grid(); }
    static FluidState rest(const GridSpec& g);

    bool operator==(const FluidState&) const = default;
};

struct PhysicsParams {
    double nu;  // kinematic viscosity, > 0
    double cs2; // squared sound speed, > 0
    double dt;  // > 0
    Field2D forcing_fx;
    Field2D forcing_fy;

    /// dt * nu / h^2; explicit diffusion wants this small. The solvers warn
    /// (never abort) above diffusion_warn_threshold.
    double diffusion_number() const {
        const double h = forcing_fx.grid().spacing;
        return dt * nu / (h * h);
    }
    static constexpr double diffusion_warn_threshold = 0.25;
};

/// v = grad(chi) + A, with centered differences for the gradient.
std::pair<Field2D, Field2D> velocity(const FluidState& s, Backend backend = Backend::parallel);

/// omega = dx(Ay) - dy(Ax)
Field2D vorticity(const FluidState& s, Backend backend = Backend::parallel);

/// Scratch planes for one step; reusing it across steps avoids per-step
/// allocations.
struct NshjWorkspace {
    Field2D vx, vy, w, divv, dxr, dyr, dxw, dyw, tmp;
    explicit NshjWorkspace(const GridSpec& g);
};

/// One explicit Euler step of the discretized system. Throws DivergenceError
/// (with the field name) when the update produces a non-finite value.
FluidState step_nshj(const FluidState& s, const PhysicsParams& p,
                     Backend backend = Backend::parallel);
void step_nshj_inplace(FluidState& s, const PhysicsParams& p, NshjWorkspace& ws,
                       Backend backend = Backend::parallel);

/// Hooks fired during evolve(): after_step runs once per completed step with
/// the 1-based step index and the state at that step.
struct EvolveObservers {
    std::function<void(int step, double t, const FluidState&)> after_step;
};

/// Repeated step_nshj. steps = 0 returns the input unchanged and fires no
/// observers; a divergence aborts with the failing step index attached.
FluidState evolve(FluidState s, const PhysicsParams& p, int steps,
                  const EvolveObservers* obs = nullptr, Backend backend = Backend::parallel);

} // namespace c2flow
