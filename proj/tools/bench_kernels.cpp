// Times the serial reference kernels against the OpenMP ones and the full
// solver steps built on them. Usage: bench_kernels [n ...], default 16 32.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "c2flow/carleman.hpp"
#include "c2flow/config.hpp"
#include "c2flow/kernels.hpp"
#include "c2flow/nshj.hpp"
#include "c2flow/scenario.hpp"

using namespace c2flow;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(int reps, const std::function<void()>& fn) {
    fn(); // warm up
    const auto t0 = clock_type::now();
    for (int i = 0; i < reps; ++i)
        fn();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, int n, double serial_ms, double parallel_ms) {
    std::printf("%-22s n=%-3d serial %10.3f ms   omp %10.3f ms   speedup %5.2fx\n", name, n,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

void bench_grid(int n) {
    const GridSpec g = GridSpec::square(n);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Field2D f(g), out(g);
    for (size_t i = 0; i < f.size(); ++i)
        f[i] = dist(rng);
    const int reps = 2000;
    report("dx", n, time_ms(reps, [&] { kernels::serial::dx(g, f.data(), out.data()); }),
           time_ms(reps, [&] { kernels::dx(g, f.data(), out.data()); }));
    report("laplace_wide", n,
           time_ms(reps, [&] { kernels::serial::laplace_wide(g, f.data(), out.data()); }),
           time_ms(reps, [&] { kernels::laplace_wide(g, f.data(), out.data()); }));
}

void bench_solvers(int n) {
    RunConfig cfg = default_config(Scenario::kolmogorov);
    cfg.grid_n = n;
    const FluidState ic = build_initial_state(cfg);
    const PhysicsParams p = make_physics(cfg);

    {
        FluidState s1 = ic, s2 = ic;
        NshjWorkspace ws(ic.grid());
        report("step_nshj", n,
               time_ms(200, [&] { step_nshj_inplace(s1, p, ws, Backend::serial); }),
               time_ms(200, [&] { step_nshj_inplace(s2, p, ws, Backend::parallel); }));
    }

    const CarlemanOperators ops = assemble_operators(ic.grid(), p);
    C2State state = lift(ic);
    C2Workspace ws(ops.dim());
    const int reps = n >= 32 ? 5 : 20;
    C2State s1{state.j1, state.j2};
    C2State s2{state.j1, state.j2};
    report("step_c2", n,
           time_ms(reps, [&] { step_c2_inplace(s1, ops, ws, Backend::serial); }),
           time_ms(reps, [&] { step_c2_inplace(s2, ops, ws, Backend::parallel); }));

    DenseMatrix scratch(ops.dim());
    report("sparse_dense", n,
           time_ms(reps, [&] { kernels::serial::sparse_dense(ops.a_op, state.j2.data(),
                                                             scratch.data()); }),
           time_ms(reps, [&] { kernels::sparse_dense(ops.a_op, state.j2.data(),
                                                     scratch.data()); }));
    std::vector<double> w(static_cast<size_t>(ops.dim()));
    report("bilinear_contract", n,
           time_ms(reps, [&] { kernels::serial::bilinear_contract(ops.b_op, state.j2.data(),
                                                                  w.data()); }),
           time_ms(reps, [&] { kernels::bilinear_contract(ops.b_op, state.j2.data(),
                                                          w.data()); }));
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> sizes;
    for (int i = 1; i < argc; ++i)
        sizes.push_back(std::stoi(argv[i]));
    if (sizes.empty())
        sizes = {16, 32};
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif
    for (int n : sizes) {
        bench_grid(n);
        bench_solvers(n);
    }
    return 0;
}
