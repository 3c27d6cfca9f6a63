#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "c2flow/grid.hpp"
#include "c2flow/kernels.hpp"
#include "c2flow/nshj.hpp"

namespace c2flow {

/// Scalar vorticity on the periodic grid; the whole state of the reference
/// incompressible solver.
struct VorticityState {
    Field2D omega;
    const GridSpec& grid() const { return omega.grid(); }
};

/// Direct inversion of the 5-point Laplacian symbol via a dense DFT
/// (row-column passes with precomputed twiddles). Grids here are tiny, so
/// O(N^3) passes beat setting up an iterative solver.
class PoissonSolver5 {
public:
    explicit PoissonSolver5(const GridSpec& grid, Backend backend = Backend::parallel);

    /// psi with laplace5(psi) = -omega and mean(psi) = 0. The mean mode of
    /// omega is discarded (solvability on the periodic domain).
    Field2D solve(const Field2D& omega) const;

    const GridSpec& grid() const { return grid_; }

private:
    GridSpec grid_;
    Backend backend_;
    std::vector<double> cosw_, sinw_; // n x n twiddle tables
    std::vector<double> inv_lambda_;  // n x n symbol inverse, 0 at k = 0
};

/// Compact 5-point Laplacian (spacing h), used by the Poisson contract.
Field2D laplace5(const Field2D& f);

/// One-shot convenience wrapper around PoissonSolver5.
Field2D poisson_solve(const Field2D& omega);

/// Explicit Euler vorticity-streamfunction solver:
///   omega' = omega + dt [ -(v . grad) omega + nu (DxDx + DyDy) omega + curl f ]
/// with v = (dy psi, -dx psi) and psi from the Poisson solve. The advective
/// and viscous terms reuse the same centered stencils as the
/// Hamilton-Jacobi path.
class NsSolver {
public:
    NsSolver(const PhysicsParams& physics, const GridSpec& grid,
             Backend backend = Backend::parallel);

    VorticityState step(const VorticityState& s) const;
    VorticityState evolve(VorticityState s, int steps,
                          const std::function<void(int, double, const VorticityState&)>&
                              after_step = nullptr) const;
    std::pair<Field2D, Field2D> velocity(const VorticityState& s) const;
    const Field2D& forcing_curl() const { return curl_f_; }
    const PhysicsParams& physics() const { return physics_; }

private:
    PhysicsParams physics_;
    Backend backend_;
    PoissonSolver5 poisson_;
    Field2D curl_f_;
};

/// Vorticity of a velocity field carried by a FluidState (curl of grad(chi)
/// vanishes identically, so this equals dx(vy) - dy(vx)).
VorticityState vorticity_state_from(const FluidState& s);

/// One-shot velocity reconstruction: psi = poisson_solve(omega),
/// v = (dy psi, -dx psi).
std::pair<Field2D, Field2D> velocity_from_omega(const VorticityState& s);

} // namespace c2flow
