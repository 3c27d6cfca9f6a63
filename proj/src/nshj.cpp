#include "c2flow/nshj.hpp"

#include <stdexcept>

#include "c2flow/errors.hpp"

namespace c2flow {

namespace {

void check_state_grids(const FluidState& s, const PhysicsParams& p) {
    if (s.chi.grid() != s.rho.grid() || s.ax.grid() != s.rho.grid() ||
        s.ay.grid() != s.rho.grid())
        throw std::invalid_argument("FluidState fields live on different grids");
    if (p.forcing_fx.grid() != s.rho.grid() || p.forcing_fy.grid() != s.rho.grid())
        throw std::invalid_argument("forcing grid does not match the state grid");
}

} // namespace

FluidState FluidState::rest(const GridSpec& g) {
    return {Field2D(g, 1.0), Field2D(g), Field2D(g), Field2D(g)};
}

NshjWorkspace::NshjWorkspace(const GridSpec& g)
    : vx(g), vy(g), w(g), divv(g), dxr(g), dyr(g), dxw(g), dyw(g), tmp(g) {}

std::pair<Field2D, Field2D> velocity(const FluidState& s, Backend backend) {
    const GridSpec& g = s.grid();
    Field2D vx(g), vy(g), grad(g);
    if (backend == Backend::parallel) {
        kernels::dx(g, s.chi.data(), grad.data());
        kernels::add(grad.data(), s.ax.data(), vx.data(), vx.size());
        kernels::dy(g, s.chi.data(), grad.data());
        kernels::add(grad.data(), s.ay.data(), vy.data(), vy.size());
    } else {
        kernels::serial::dx(g, s.chi.data(), grad.data());
        kernels::serial::add(grad.data(), s.ax.data(), vx.data(), vx.size());
        kernels::serial::dy(g, s.chi.data(), grad.data());
        kernels::serial::add(grad.data(), s.ay.data(), vy.data(), vy.size());
    }
    return {std::move(vx), std::move(vy)};
}

Field2D vorticity(const FluidState& s, Backend backend) {
    const GridSpec& g = s.grid();
    Field2D w(g), tmp(g);
    if (backend == Backend::parallel) {
        kernels::dx(g, s.ay.data(), w.data());
        kernels::dy(g, s.ax.data(), tmp.data());
        kernels::negate(tmp.data(), tmp.data(), tmp.size());
        kernels::add(w.data(), tmp.data(), w.data(), w.size());
    } else {
        kernels::serial::dx(g, s.ay.data(), w.data());
        kernels::serial::dy(g, s.ax.data(), tmp.data());
        kernels::serial::negate(tmp.data(), tmp.data(), tmp.size());
        kernels::serial::add(w.data(), tmp.data(), w.data(), w.size());
    }
    return w;
}

void step_nshj_inplace(FluidState& s, const PhysicsParams& p, NshjWorkspace& ws,
                       Backend backend) {
    check_state_grids(s, p);
    const GridSpec& g = s.grid();
    const size_t len = s.rho.size();

    if (backend == Backend::parallel) {
        namespace k = kernels;
        // velocity and vorticity at time t
        k::dx(g, s.chi.data(), ws.tmp.data());
        k::add(ws.tmp.data(), s.ax.data(), ws.vx.data(), len);
        k::dy(g, s.chi.data(), ws.tmp.data());
        k::add(ws.tmp.data(), s.ay.data(), ws.vy.data(), len);
        k::dx(g, s.ay.data(), ws.w.data());
        k::dy(g, s.ax.data(), ws.tmp.data());
        k::negate(ws.tmp.data(), ws.tmp.data(), len);
        k::add(ws.w.data(), ws.tmp.data(), ws.w.data(), len);
        // derivative planes
        k::dx(g, ws.vx.data(), ws.divv.data());
        k::dy(g, ws.vy.data(), ws.tmp.data());
        k::add(ws.divv.data(), ws.tmp.data(), ws.divv.data(), len);
        k::dx(g, s.rho.data(), ws.dxr.data());
        k::dy(g, s.rho.data(), ws.dyr.data());
        k::dx(g, ws.w.data(), ws.dxw.data());
        k::dy(g, ws.w.data(), ws.dyw.data());
        k::nshj_update(g, p.dt, p.nu, p.cs2, s.rho.data(), s.chi.data(), s.ax.data(),
                       s.ay.data(), ws.vx.data(), ws.vy.data(), ws.w.data(), ws.divv.data(),
                       ws.dxr.data(), ws.dyr.data(), ws.dxw.data(), ws.dyw.data(),
                       p.forcing_fx.data(), p.forcing_fy.data(), s.rho.data(), s.chi.data(),
                       s.ax.data(), s.ay.data());
    } else {
        namespace k = kernels::serial;
        k::dx(g, s.chi.data(), ws.tmp.data());
        k::add(ws.tmp.data(), s.ax.data(), ws.vx.data(), len);
        k::dy(g, s.chi.data(), ws.tmp.data());
        k::add(ws.tmp.data(), s.ay.data(), ws.vy.data(), len);
        k::dx(g, s.ay.data(), ws.w.data());
        k::dy(g, s.ax.data(), ws.tmp.data());
        k::negate(ws.tmp.data(), ws.tmp.data(), len);
        k::add(ws.w.data(), ws.tmp.data(), ws.w.data(), len);
        k::dx(g, ws.vx.data(), ws.divv.data());
        k::dy(g, ws.vy.data(), ws.tmp.data());
        k::add(ws.divv.data(), ws.tmp.data(), ws.divv.data(), len);
        k::dx(g, s.rho.data(), ws.dxr.data());
        k::dy(g, s.rho.data(), ws.dyr.data());
        k::dx(g, ws.w.data(), ws.dxw.data());
        k::dy(g, ws.w.data(), ws.dyw.data());
        k::nshj_update(g, p.dt, p.nu, p.cs2, s.rho.data(), s.chi.data(), s.ax.data(),
                       s.ay.data(), ws.vx.data(), ws.vy.data(), ws.w.data(), ws.divv.data(),
                       ws.dxr.data(), ws.dyr.data(), ws.dxw.data(), ws.dyw.data(),
                       p.forcing_fx.data(), p.forcing_fy.data(), s.rho.data(), s.chi.data(),
                       s.ax.data(), s.ay.data());
    }

    if (!s.rho.all_finite())
        throw DivergenceError("rho", -1);
    if (!s.chi.all_finite())
        throw DivergenceError("chi", -1);
    if (!s.ax.all_finite())
        throw DivergenceError("ax", -1);
    if (!s.ay.all_finite())
        throw DivergenceError("ay", -1);
}

FluidState step_nshj(const FluidState& s, const PhysicsParams& p, Backend backend) {
    FluidState out = s;
    NshjWorkspace ws(s.grid());
    step_nshj_inplace(out, p, ws, backend);
    return out;
}

FluidState evolve(FluidState s, const PhysicsParams& p, int steps, const EvolveObservers* obs,
                  Backend backend) {
    if (steps < 0)
        throw std::invalid_argument("evolve: steps must be >= 0");
    if (steps == 0)
        return s;
    NshjWorkspace ws(s.grid());
    for (int step = 1; step <= steps; ++step) {
        try {
            step_nshj_inplace(s, p, ws, backend);
        } catch (const DivergenceError& e) {
            throw e.with_step(step);
        }
        if (obs && obs->after_step)
            obs->after_step(step, step * p.dt, s);
    }
    return s;
}

} // namespace c2flow
