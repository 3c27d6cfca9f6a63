#include "c2flow/reference_ns.hpp"

#include <cmath>
#include <stdexcept>

#include "c2flow/errors.hpp"

namespace c2flow {

PoissonSolver5::PoissonSolver5(const GridSpec& grid, Backend backend)
    : grid_(grid), backend_(backend) {
    const int n = grid.n;
    cosw_.resize(static_cast<size_t>(n) * n);
    sinw_.resize(static_cast<size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            const double phase = kTwoPi * static_cast<double>(static_cast<long>(k) * j % n) / n;
            cosw_[static_cast<size_t>(k) * n + j] = std::cos(phase);
            sinw_[static_cast<size_t>(k) * n + j] = std::sin(phase);
        }
    }
    const double h = grid.spacing;
    inv_lambda_.resize(static_cast<size_t>(n) * n);
    for (int ky = 0; ky < n; ++ky) {
        for (int kx = 0; kx < n; ++kx) {
            const double lam = (2.0 - 2.0 * std::cos(kTwoPi * kx / n)) / (h * h) +
                               (2.0 - 2.0 * std::cos(kTwoPi * ky / n)) / (h * h);
            inv_lambda_[static_cast<size_t>(ky) * n + kx] =
                (kx == 0 && ky == 0) ? 0.0 : 1.0 / lam;
        }
    }
}

Field2D PoissonSolver5::solve(const Field2D& omega) const {
    if (omega.grid() != grid_)
        throw std::invalid_argument("poisson_solve: grid mismatch");
    const int n = grid_.n;
    const bool par = backend_ == Backend::parallel;
    const double* cw = cosw_.data();
    const double* sw = sinw_.data();

    // forward transform along x, then y (kernel e^{-i phase})
    std::vector<double> re1(static_cast<size_t>(n) * n), im1(re1.size());
    const double* f = omega.data();
#pragma omp parallel for schedule(static) if (par)
    for (int iy = 0; iy < n; ++iy) {
        const double* row = f + static_cast<size_t>(iy) * n;
        for (int kx = 0; kx < n; ++kx) {
            const double* ck = cw + static_cast<size_t>(kx) * n;
            const double* sk = sw + static_cast<size_t>(kx) * n;
            double sr = 0.0, si = 0.0;
            for (int ix = 0; ix < n; ++ix) {
                sr += row[ix] * ck[ix];
                si -= row[ix] * sk[ix];
            }
            re1[static_cast<size_t>(iy) * n + kx] = sr;
            im1[static_cast<size_t>(iy) * n + kx] = si;
        }
    }
    std::vector<double> re2(re1.size()), im2(re1.size());
#pragma omp parallel for schedule(static) if (par)
    for (int ky = 0; ky < n; ++ky) {
        const double* ck = cw + static_cast<size_t>(ky) * n;
        const double* sk = sw + static_cast<size_t>(ky) * n;
        for (int kx = 0; kx < n; ++kx) {
            double sr = 0.0, si = 0.0;
            for (int iy = 0; iy < n; ++iy) {
                const double r = re1[static_cast<size_t>(iy) * n + kx];
                const double i = im1[static_cast<size_t>(iy) * n + kx];
                sr += r * ck[iy] + i * sk[iy];
                si += i * ck[iy] - r * sk[iy];
            }
            const double s = inv_lambda_[static_cast<size_t>(ky) * n + kx];
            re2[static_cast<size_t>(ky) * n + kx] = sr * s;
            im2[static_cast<size_t>(ky) * n + kx] = si * s;
        }
    }

    // inverse transform along y, then x (kernel e^{+i phase}, 1/n^2 overall)
#pragma omp parallel for schedule(static) if (par)
    for (int iy = 0; iy < n; ++iy) {
        const double* ck = cw + static_cast<size_t>(iy) * n;
        const double* sk = sw + static_cast<size_t>(iy) * n;
        for (int kx = 0; kx < n; ++kx) {
            double sr = 0.0, si = 0.0;
            for (int ky = 0; ky < n; ++ky) {
                const double r = re2[static_cast<size_t>(ky) * n + kx];
                const double i = im2[static_cast<size_t>(ky) * n + kx];
                sr += r * ck[ky] - i * sk[ky];
                si += i * ck[ky] + r * sk[ky];
            }
            re1[static_cast<size_t>(iy) * n + kx] = sr;
            im1[static_cast<size_t>(iy) * n + kx] = si;
        }
    }
    Field2D psi(grid_);
    const double norm = 1.0 / (static_cast<double>(n) * n);
#pragma omp parallel for schedule(static) if (par)
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const double* crow = cw + static_cast<size_t>(ix) * n;
            const double* srow = sw + static_cast<size_t>(ix) * n;
            double sr = 0.0;
            for (int kx = 0; kx < n; ++kx)
                sr += re1[static_cast<size_t>(iy) * n + kx] * crow[kx] -
                      im1[static_cast<size_t>(iy) * n + kx] * srow[kx];
            psi.at(ix, iy) = sr * norm;
        }
    }
    return psi;
}

Field2D laplace5(const Field2D& f) {
    const GridSpec& g = f.grid();
    const double inv_h2 = 1.0 / (g.spacing * g.spacing);
    Field2D out(g);
    for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix) {
            const double c = f.at(ix, iy);
            out.at(ix, iy) = (f.wrapped(ix + 1, iy) + f.wrapped(ix - 1, iy) +
                              f.wrapped(ix, iy + 1) + f.wrapped(ix, iy - 1) - 4.0 * c) * inv_h2;
        }
    }
    return out;
}

Field2D poisson_solve(const Field2D& omega) {
    return PoissonSolver5(omega.grid()).solve(omega);
}

NsSolver::NsSolver(const PhysicsParams& physics, const GridSpec& grid, Backend backend)
    : physics_(physics), backend_(backend), poisson_(grid, backend), curl_f_(grid) {
    if (physics.forcing_fx.grid() != grid || physics.forcing_fy.grid() != grid)
        throw std::invalid_argument("NsSolver: forcing grid mismatch");
    Field2D tmp(grid);
    if (backend == Backend::parallel) {
        kernels::dx(grid, physics.forcing_fy.data(), curl_f_.data());
        kernels::dy(grid, physics.forcing_fx.data(), tmp.data());
        kernels::negate(tmp.data(), tmp.data(), tmp.size());
        kernels::add(curl_f_.data(), tmp.data(), curl_f_.data(), curl_f_.size());
    } else {
        kernels::serial::dx(grid, physics.forcing_fy.data(), curl_f_.data());
        kernels::serial::dy(grid, physics.forcing_fx.data(), tmp.data());
        kernels::serial::negate(tmp.data(), tmp.data(), tmp.size());
        kernels::serial::add(curl_f_.data(), tmp.data(), curl_f_.data(), curl_f_.size());
    }
}

std::pair<Field2D, Field2D> NsSolver::velocity(const VorticityState& s) const {
    const GridSpec& g = poisson_.grid();
    const Field2D psi = poisson_.solve(s.omega);
    Field2D vx(g), vy(g);
    if (backend_ == Backend::parallel) {
        kernels::dy(g, psi.data(), vx.data());
        kernels::dx(g, psi.data(), vy.data());
        kernels::negate(vy.data(), vy.data(), vy.size());
    } else {
        kernels::serial::dy(g, psi.data(), vx.data());
        kernels::serial::dx(g, psi.data(), vy.data());
        kernels::serial::negate(vy.data(), vy.data(), vy.size());
    }
    return {std::move(vx), std::move(vy)};
}

VorticityState NsSolver::step(const VorticityState& s) const {
    const GridSpec& g = poisson_.grid();
    if (s.grid() != g)
        throw std::invalid_argument("NsSolver::step: grid mismatch");
    auto [vx, vy] = velocity(s);
    Field2D dxw(g), dyw(g), lapw(g);
    Field2D out(g);
    if (backend_ == Backend::parallel) {
        kernels::dx(g, s.omega.data(), dxw.data());
        kernels::dy(g, s.omega.data(), dyw.data());
        kernels::laplace_wide(g, s.omega.data(), lapw.data());
        kernels::ns_update(physics_.dt, physics_.nu, s.omega.data(), vx.data(), vy.data(),
                           dxw.data(), dyw.data(), lapw.data(), curl_f_.data(), out.data(),
                           out.size());
    } else {
        kernels::serial::dx(g, s.omega.data(), dxw.data());
        kernels::serial::dy(g, s.omega.data(), dyw.data());
        kernels::serial::laplace_wide(g, s.omega.data(), lapw.data());
        kernels::serial::ns_update(physics_.dt, physics_.nu, s.omega.data(), vx.data(),
                                   vy.data(), dxw.data(), dyw.data(), lapw.data(),
                                   curl_f_.data(), out.data(), out.size());
    }
    if (!out.all_finite())
        throw DivergenceError("omega", -1);
    return {std::move(out)};
}

VorticityState NsSolver::evolve(
    VorticityState s, int steps,
    const std::function<void(int, double, const VorticityState&)>& after_step) const {
    if (steps < 0)
        throw std::invalid_argument("evolve: steps must be >= 0");
    for (int step = 1; step <= steps; ++step) {
        try {
            s = this->step(s);
        } catch (const DivergenceError& e) {
            throw e.with_step(step);
        }
        if (after_step)
            after_step(step, step * physics_.dt, s);
    }
    return s;
}

VorticityState vorticity_state_from(const FluidState& s) {
    auto [vx, vy] = velocity(s);
    Field2D w = dx(vy);
    Field2D t = dy(vx);
    for (size_t i = 0; i < w.size(); ++i)
        w[i] -= t[i];
    return {std::move(w)};
}

std::pair<Field2D, Field2D> velocity_from_omega(const VorticityState& s) {
    const GridSpec& g = s.grid();
    const Field2D psi = poisson_solve(s.omega);
    Field2D vx = dy(psi);
    Field2D vyneg = dx(psi);
    Field2D vy(g);
    kernels::negate(vyneg.data(), vy.data(), vy.size());
    return {std::move(vx), std::move(vy)};
}

} // namespace c2flow
