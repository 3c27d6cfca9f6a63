#include "c2flow/carleman.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "c2flow/errors.hpp"

namespace c2flow {

namespace {

struct StencilEntry {
    int node;
    double w;
};

using Pair = std::array<StencilEntry, 2>;

} // namespace

CarlemanOperators assemble_operators(const GridSpec& grid, const PhysicsParams& physics) {
    if (physics.forcing_fx.grid() != grid || physics.forcing_fy.grid() != grid)
        throw std::invalid_argument("assemble_operators: forcing grid mismatch");

    const int n = grid.n;
    const int cells = grid.cells();
    const int dim = kNumFields * cells;
    const double h = grid.spacing;
    const double s1 = 1.0 / (2.0 * h);
    const double s2 = 1.0 / (4.0 * h * h);
    const double dt = physics.dt;
    const double dtnu = dt * physics.nu;

    std::vector<CsrMatrix::Triplet> a_entries;
    a_entries.reserve(static_cast<size_t>(cells) * 26);
    std::vector<BilinearTensor::Entry> b_raw;
    b_raw.reserve(static_cast<size_t>(cells) * 60);

    auto block = [cells](int field, int node) { return field * cells + node; };
    auto add_a = [&a_entries](int r, int c, double v) {
        if (v != 0.0)
            a_entries.push_back({r, c, v});
    };

    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const int node = grid.index(ix, iy);
            const int e = grid.index(grid.wrap(ix + 1), iy);
            const int w = grid.index(grid.wrap(ix - 1), iy);
            const int nn = grid.index(ix, grid.wrap(iy + 1));
            const int ss = grid.index(ix, grid.wrap(iy - 1));
            const int ee = grid.index(grid.wrap(ix + 2), iy);
            const int ww = grid.index(grid.wrap(ix - 2), iy);
            const int n2 = grid.index(ix, grid.wrap(iy + 2));
            const int ss2 = grid.index(ix, grid.wrap(iy - 2));
            const int en = grid.index(grid.wrap(ix + 1), grid.wrap(iy + 1));
            const int es = grid.index(grid.wrap(ix + 1), grid.wrap(iy - 1));
            const int wn = grid.index(grid.wrap(ix - 1), grid.wrap(iy + 1));
            const int ws = grid.index(grid.wrap(ix - 1), grid.wrap(iy - 1));

            const Pair dxS{{{e, s1}, {w, -s1}}};
            const Pair dyS{{{nn, s1}, {ss, -s1}}};
            const std::array<StencilEntry, 5> lapS{
                {{ee, s2}, {ww, s2}, {n2, s2}, {ss2, s2}, {node, -4.0 * s2}}};
            const std::array<StencilEntry, 3> dxdxS{{{ee, s2}, {ww, s2}, {node, -2.0 * s2}}};
            const std::array<StencilEntry, 3> dydyS{{{n2, s2}, {ss2, s2}, {node, -2.0 * s2}}};
            const std::array<StencilEntry, 4> dxdyS{{{en, s2}, {es, -s2}, {wn, -s2}, {ws, s2}}};

            const int r_rho = block(kRho, node);
            const int r_chi = block(kChi, node);
            const int r_ax = block(kAx, node);
            const int r_ay = block(kAy, node);

            // --- linear tensor A ---------------------------------------
            add_a(r_rho, r_rho, 1.0);

            add_a(r_chi, r_chi, 1.0);
            for (const auto& s : lapS)
                add_a(r_chi, block(kChi, s.node), dtnu * s.w);
            add_a(r_chi, block(kRho, node), -dt * physics.cs2);
            for (const auto& s : dxS)
                add_a(r_chi, block(kAx, s.node), dtnu * s.w);
            for (const auto& s : dyS)
                add_a(r_chi, block(kAy, s.node), dtnu * s.w);

            add_a(r_ax, r_ax, 1.0);
            for (const auto& s : dydyS)
                add_a(r_ax, block(kAx, s.node), dtnu * s.w);
            for (const auto& s : dxdyS)
                add_a(r_ax, block(kAy, s.node), -dtnu * s.w);

            add_a(r_ay, r_ay, 1.0);
            for (const auto& s : dxdxS)
                add_a(r_ay, block(kAy, s.node), dtnu * s.w);
            for (const auto& s : dxdyS)
                add_a(r_ay, block(kAx, s.node), -dtnu * s.w);

            // --- bilinear tensor B (raw, symmetrized below) -------------
            auto raw = [&](int alpha, int f1, int m, int f2, int p, double c) {
                b_raw.push_back({alpha, block(f1, m), block(f2, p), c});
            };

            // rho row: -dt [ (Dx rho) vx + (Dy rho) vy + rho (div v) ]
            for (const auto& sm : dxS) {
                for (const auto& sp : dxS)
                    raw(r_rho, kRho, sm.node, kChi, sp.node, -dt * sm.w * sp.w);
                raw(r_rho, kRho, sm.node, kAx, node, -dt * sm.w);
            }
            for (const auto& sm : dyS) {
                for (const auto& sp : dyS)
                    raw(r_rho, kRho, sm.node, kChi, sp.node, -dt * sm.w * sp.w);
                raw(r_rho, kRho, sm.node, kAy, node, -dt * sm.w);
            }
            for (const auto& sp : lapS)
                raw(r_rho, kRho, node, kChi, sp.node, -dt * sp.w);
            for (const auto& sp : dxS)
                raw(r_rho, kRho, node, kAx, sp.node, -dt * sp.w);
            for (const auto& sp : dyS)
                raw(r_rho, kRho, node, kAy, sp.node, -dt * sp.w);

            // chi row: -dt/2 (vx^2 + vy^2)
            for (const auto& sm : dxS) {
                for (const auto& sp : dxS)
                    raw(r_chi, kChi, sm.node, kChi, sp.node, -0.5 * dt * sm.w * sp.w);
                raw(r_chi, kChi, sm.node, kAx, node, -dt * sm.w);
            }
            raw(r_chi, kAx, node, kAx, node, -0.5 * dt);
            for (const auto& sm : dyS) {
                for (const auto& sp : dyS)
                    raw(r_chi, kChi, sm.node, kChi, sp.node, -0.5 * dt * sm.w * sp.w);
                raw(r_chi, kChi, sm.node, kAy, node, -dt * sm.w);
            }
            raw(r_chi, kAy, node, kAy, node, -0.5 * dt);

            // ax row: +dt omega vy, omega = Dx Ay - Dy Ax, vy = Dy chi + Ay
            for (const auto& sm : dxS) {
                for (const auto& sp : dyS)
                    raw(r_ax, kAy, sm.node, kChi, sp.node, dt * sm.w * sp.w);
                raw(r_ax, kAy, sm.node, kAy, node, dt * sm.w);
            }
            for (const auto& sm : dyS) {
                for (const auto& sp : dyS)
                    raw(r_ax, kAx, sm.node, kChi, sp.node, -dt * sm.w * sp.w);
                raw(r_ax, kAx, sm.node, kAy, node, -dt * sm.w);
            }

            // ay row: -dt omega vx, vx = Dx chi + Ax
            for (const auto& sm : dxS) {
                for (const auto& sp : dxS)
                    raw(r_ay, kAy, sm.node, kChi, sp.node, -dt * sm.w * sp.w);
                raw(r_ay, kAy, sm.node, kAx, node, -dt * sm.w);
            }
            for (const auto& sm : dyS) {
                for (const auto& sp : dxS)
                    raw(r_ay, kAx, sm.node, kChi, sp.node, dt * sm.w * sp.w);
                raw(r_ay, kAx, sm.node, kAx, node, dt * sm.w);
            }
        }
    }

    // symmetrize: each off-diagonal product contributes half to (beta, gamma)
    // and half to (gamma, beta); legitimate because J^(2) is symmetric
    std::vector<BilinearTensor::Entry> b_entries;
    b_entries.reserve(b_raw.size() * 2);
    for (const auto& entry : b_raw) {
        if (entry.beta == entry.gamma) {
            b_entries.push_back(entry);
        } else {
            b_entries.push_back({entry.alpha, entry.beta, entry.gamma, 0.5 * entry.coeff});
            b_entries.push_back({entry.alpha, entry.gamma, entry.beta, 0.5 * entry.coeff});
        }
    }

    CarlemanOperators ops;
    ops.a_op = CsrMatrix::from_triplets(dim, std::move(a_entries));
    ops.b_op = BilinearTensor::from_entries(dim, std::move(b_entries));
    ops.grid = grid;
    ops.nu = physics.nu;
    ops.cs2 = physics.cs2;
    ops.dt = dt;
    ops.f_vec.assign(static_cast<size_t>(dim), 0.0);
    for (int node = 0; node < cells; ++node) {
        ops.f_vec[static_cast<size_t>(block(kChi, node))] = dt * physics.cs2;
        ops.f_vec[static_cast<size_t>(block(kAx, node))] = dt * physics.forcing_fx[node];
        ops.f_vec[static_cast<size_t>(block(kAy, node))] = dt * physics.forcing_fy[node];
    }
    return ops;
}

std::vector<double> flatten(const FluidState& s) {
    const int cells = s.grid().cells();
    std::vector<double> j(static_cast<size_t>(kNumFields) * cells);
    const Field2D* fields[kNumFields] = {&s.rho, &s.chi, &s.ax, &s.ay};
    for (int f = 0; f < kNumFields; ++f)
        for (int node = 0; node < cells; ++node)
            j[static_cast<size_t>(f) * cells + node] = (*fields[f])[node];
    return j;
}

FluidState unflatten(std::span<const double> j, const GridSpec& grid) {
    const int cells = grid.cells();
    if (j.size() != static_cast<size_t>(kNumFields) * cells)
        throw std::invalid_argument("unflatten: length does not match the grid");
    FluidState s{Field2D(grid), Field2D(grid), Field2D(grid), Field2D(grid)};
    Field2D* fields[kNumFields] = {&s.rho, &s.chi, &s.ax, &s.ay};
    for (int f = 0; f < kNumFields; ++f)
        for (int node = 0; node < cells; ++node)
            (*fields[f])[node] = j[static_cast<size_t>(f) * cells + node];
    return s;
}

C2State lift(const FluidState& s) {
    C2State state{flatten(s), DenseMatrix(kNumFields * s.grid().cells())};
    const int dim = state.dim();
    const double* u = state.j1.data();
    double* m = state.j2.data();
#pragma omp parallel for schedule(static)
    for (int p = 0; p < dim; ++p) {
        const double up = u[p];
        double* row = m + static_cast<size_t>(p) * dim;
        for (int q = 0; q < dim; ++q)
            row[q] = up * u[q];
    }
    return state;
}

FluidState readout(const C2State& state, const GridSpec& grid) {
    return unflatten(state.j1, grid);
}

void step_c2_inplace(C2State& state, const CarlemanOperators& ops, C2Workspace& ws,
                     Backend backend, long step_index) {
    const int dim = ops.dim();
    if (state.dim() != dim || state.j2.dim() != dim || ws.scratch.dim() != dim)
        throw std::invalid_argument("step_c2: dimension mismatch");
    const double* f = ops.f_vec.data();

    if (backend == Backend::parallel) {
        namespace k = kernels;
        k::bilinear_contract(ops.b_op, state.j2.data(), ws.bm.data());
        k::spmv(ops.a_op, state.j1.data(), ws.au.data());
        k::add(ws.au.data(), ws.bm.data(), ws.c.data(), static_cast<size_t>(dim));
        k::add(ws.c.data(), f, state.j1.data(), static_cast<size_t>(dim));
        k::sparse_dense(ops.a_op, state.j2.data(), ws.scratch.data());
        k::dense_sparse_t(ops.a_op, ws.scratch.data(), state.j2.data());
        k::symmetric_rank_update(state.j2.data(), ws.c.data(), f, dim);
        if (!k::all_finite(state.j1.data(), state.j1.size()))
            throw DivergenceError("c2 first-order block", step_index);
        if (!k::all_finite(state.j2.data(), state.j2.size()))
            throw DivergenceError("c2 second-order block", step_index);
    } else {
        namespace k = kernels::serial;
        k::bilinear_contract(ops.b_op, state.j2.data(), ws.bm.data());
        k::spmv(ops.a_op, state.j1.data(), ws.au.data());
        k::add(ws.au.data(), ws.bm.data(), ws.c.data(), static_cast<size_t>(dim));
        k::add(ws.c.data(), f, state.j1.data(), static_cast<size_t>(dim));
        k::sparse_dense(ops.a_op, state.j2.data(), ws.scratch.data());
        k::dense_sparse_t(ops.a_op, ws.scratch.data(), state.j2.data());
        k::symmetric_rank_update(state.j2.data(), ws.c.data(), f, dim);
        if (!k::all_finite(state.j1.data(), state.j1.size()))
            throw DivergenceError("c2 first-order block", step_index);
        if (!k::all_finite(state.j2.data(), state.j2.size()))
            throw DivergenceError("c2 second-order block", step_index);
    }
}

C2State step_c2(const C2State& state, const CarlemanOperators& ops, Backend backend) {
    C2State out{state.j1, state.j2};
    C2Workspace ws(ops.dim());
    step_c2_inplace(out, ops, ws, backend);
    return out;
}

double closure_defect(const C2State& state, Backend backend) {
    const int dim = state.dim();
    const double sumsq =
        backend == Backend::parallel
            ? kernels::outer_residual_sumsq(state.j2.data(), state.j1.data(), dim)
            : kernels::serial::outer_residual_sumsq(state.j2.data(), state.j1.data(), dim);
    double norm1 = 0.0;
    for (int i = 0; i < dim; ++i)
        norm1 += state.j1[i] * state.j1[i];
    return std::sqrt(sumsq) / std::max(norm1, 1e-30);
}

} // namespace c2flow
