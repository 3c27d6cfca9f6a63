#include "c2flow/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "c2flow/carleman.hpp"
#include "c2flow/csvio.hpp"
#include "c2flow/errors.hpp"
#include "c2flow/logistic.hpp"
#include "c2flow/plot.hpp"
#include "c2flow/reference_ns.hpp"
#include "c2flow/scenario.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace c2flow {

namespace {

struct SolverRun {
    std::string name;
    std::vector<ProbeSeries> series;
    std::vector<FluidState> snapshots;
    std::vector<int> snapshot_steps;
    FluidState final_state;
    bool completed = false;
    double closure = -1.0; // c2 only
    SteadyResult steady;
    int steady_steps = -1; // steps_to_steady converted to solver steps
    long diverged_step = -1;
    std::string diverged_field;
};

std::vector<ProbeSeries> make_series(const RunConfig& cfg, const GridSpec& grid) {
    std::vector<ProbeSeries> out;
    for (ProbeQuantity q : cfg.probe_quantities)
        for (const auto& p : cfg.probes)
            out.push_back(ProbeSeries::at(p, q, grid));
    return out;
}

bool snapshot_due(const RunConfig& cfg, int step) {
    return cfg.snapshot_every > 0 && (step == cfg.steps || step % cfg.snapshot_every == 0);
}

void take_snapshot(SolverRun& run, const FluidState& s, int step) {
    run.snapshots.push_back(s);
    run.snapshot_steps.push_back(step);
}

/// Density-free view of the reference solver's state: v lives entirely in A,
/// so v = grad(chi) + A reproduces it exactly.
FluidState ns_view(const NsSolver& solver, const VorticityState& w) {
    auto [vx, vy] = solver.velocity(w);
    const GridSpec& g = w.grid();
    return {Field2D(g, 1.0), Field2D(g), std::move(vx), std::move(vy)};
}

SolverRun run_nshj(const RunConfig& cfg, const FluidState& ic, const PhysicsParams& p) {
    SolverRun out;
    out.name = "nshj";
    out.series = make_series(cfg, ic.grid());
    sample_probes(ic, 0.0, out.series);
    if (snapshot_due(cfg, 0) && cfg.steps > 0)
        take_snapshot(out, ic, 0);
    EvolveObservers obs;
    obs.after_step = [&](int step, double t, const FluidState& s) {
        sample_probes(s, t, out.series);
        if (snapshot_due(cfg, step))
            take_snapshot(out, s, step);
    };
    try {
        out.final_state = evolve(ic, p, cfg.steps, &obs);
        out.completed = true;
    } catch (const DivergenceError& e) {
        out.diverged_step = e.step();
        out.diverged_field = e.field();
    }
    return out;
}

SolverRun run_ns(const RunConfig& cfg, const FluidState& ic, const PhysicsParams& p) {
    SolverRun out;
    out.name = "ns";
    out.series = make_series(cfg, ic.grid());
    const NsSolver solver(p, ic.grid());
    VorticityState w = vorticity_state_from(ic);
    FluidState view = ns_view(solver, w);
    sample_probes(view, 0.0, out.series);
    if (snapshot_due(cfg, 0) && cfg.steps > 0)
        take_snapshot(out, view, 0);
    try {
        for (int step = 1; step <= cfg.steps; ++step) {
            try {
                w = solver.step(w);
            } catch (const DivergenceError& e) {
                throw e.with_step(step);
            }
            view = ns_view(solver, w);
            sample_probes(view, step * p.dt, out.series);
            if (snapshot_due(cfg, step))
                take_snapshot(out, view, step);
        }
        out.final_state = std::move(view);
        out.completed = true;
    } catch (const DivergenceError& e) {
        out.diverged_step = e.step();
        out.diverged_field = e.field();
    }
    return out;
}

SolverRun run_c2(const RunConfig& cfg, const FluidState& ic, const PhysicsParams& p) {
    SolverRun out;
    out.name = "c2";
    out.series = make_series(cfg, ic.grid());
    const CarlemanOperators ops = assemble_operators(ic.grid(), p);
    C2State state = lift(ic);
    C2Workspace ws(ops.dim());
    FluidState view = readout(state, ic.grid());
    sample_probes(view, 0.0, out.series);
    if (snapshot_due(cfg, 0) && cfg.steps > 0)
        take_snapshot(out, view, 0);
    try {
        for (int step = 1; step <= cfg.steps; ++step) {
            step_c2_inplace(state, ops, ws, Backend::parallel, step);
            view = readout(state, ic.grid());
            sample_probes(view, step * p.dt, out.series);
            if (snapshot_due(cfg, step))
                take_snapshot(out, view, step);
        }
        out.final_state = std::move(view);
        out.completed = true;
        out.closure = closure_defect(state);
    } catch (const DivergenceError& e) {
        out.diverged_step = e.step();
        out.diverged_field = e.field();
    }
    return out;
}

std::string series_label(const SolverRun& run, const ProbeSeries& ps) {
    return run.name + " (" + fmt_g17(ps.location.first) + ", " +
           fmt_g17(ps.location.second) + ")";
}

void write_fluid_outputs(const RunConfig& cfg, const std::vector<SolverRun>& runs,
                         const json& report) {
    std::vector<LabeledSeries> labeled;
    for (const auto& run : runs)
        for (const auto& ps : run.series)
            labeled.push_back({run.name, ps});
    write_text_file(cfg.output_dir + "/probes.csv", probe_csv(labeled));

    for (const auto& run : runs)
        for (size_t i = 0; i < run.snapshots.size(); ++i)
            write_text_file(cfg.output_dir + "/snapshot_" + run.name + "_step" +
                                std::to_string(run.snapshot_steps[i]) + ".csv",
                            snapshot_csv(run.snapshots[i], cfg, run.snapshot_steps[i]));

    for (ProbeQuantity q : cfg.probe_quantities) {
        std::vector<PlotSeries> plot;
        for (const auto& run : runs)
            for (const auto& ps : run.series)
                if (ps.quantity == q)
                    plot.push_back({series_label(run, ps), ps.samples});
        emit_plot(plot, std::string(to_string(cfg.scenario)) + ": " + to_string(q), "t",
                  to_string(q), cfg.output_dir + "/plot_" + to_string(q) + ".svg");
    }

    write_text_file(cfg.output_dir + "/report.json", report.dump(2) + "\n");
}

int reference_priority(const std::string& name) {
    if (name == "ns")
        return 2;
    if (name == "nshj")
        return 1;
    return 0;
}

int run_fluid(const RunConfig& cfg, std::ostream& log) {
    const FluidState ic = build_initial_state(cfg);
    const PhysicsParams physics = make_physics(cfg);

    if (!cfg.quiet && physics.diffusion_number() > PhysicsParams::diffusion_warn_threshold)
        log << "warning: dt*nu/h^2 = " << physics.diffusion_number()
            << " exceeds the explicit-diffusion comfort zone ("
            << PhysicsParams::diffusion_warn_threshold << ")\n";

    std::vector<SolverRun> runs;
    for (Solver s : cfg.solvers) {
        switch (s) {
        case Solver::nshj:
            runs.push_back(run_nshj(cfg, ic, physics));
            break;
        case Solver::ns:
            runs.push_back(run_ns(cfg, ic, physics));
            break;
        case Solver::c2:
            runs.push_back(run_c2(cfg, ic, physics));
            break;
        }
        if (!cfg.quiet)
            log << "solver " << runs.back().name
                << (runs.back().completed ? ": completed " + std::to_string(cfg.steps) + " steps"
                                          : ": diverged at step " +
                                                std::to_string(runs.back().diverged_step))
                << "\n";
        if (!runs.back().completed)
            break; // retain partial outputs
    }

    json report;
    report["scenario"] = to_string(cfg.scenario);
    report["grid_n"] = cfg.grid_n;
    report["dt"] = cfg.dt;
    report["steps"] = cfg.steps;
    report["nu"] = cfg.nu;
    report["cs2"] = cfg.cs2;

    const int window_steps = std::max(1, static_cast<int>(std::lround(
                                             cfg.characteristic_time() / cfg.dt)));
    for (auto& run : runs) {
        json entry;
        if (run.completed) {
            auto [vx, vy] = velocity(run.final_state);
            const double u_s = steady_velocity_scale(vx);
            entry["u_s"] = u_s;
            entry["reynolds"] = reynolds(u_s, cfg.grid_n, cfg.nu);
            if (run.name != "ns") {
                const auto inc = incompressibility_report(run.final_state, cfg.cs2, u_s);
                entry["mach2"] = inc.mach2;
                entry["max_density_fluct"] = inc.max_density_fluct;
            }
            if (run.closure >= 0.0)
                entry["closure_defect"] = run.closure;
            if (cfg.snapshot_every > 0 && run.snapshots.size() > 1) {
                const int window_snap =
                    std::max(1, static_cast<int>(std::lround(
                                    static_cast<double>(window_steps) / cfg.snapshot_every)));
                run.steady = steady_detector(run.snapshots, window_snap, cfg.steady_tol);
                run.steady_steps =
                    run.steady.steps_to_steady < 0
                        ? -1
                        : run.snapshot_steps[static_cast<size_t>(run.steady.steps_to_steady)];
                entry["steady"] = run.steady.steady;
                entry["steps_to_steady"] = run.steady_steps;
            }
        } else {
            entry["diverged_at_step"] = run.diverged_step;
            entry["diverged_field"] = run.diverged_field;
        }
        report["solvers"][run.name] = std::move(entry);
    }

    json comparisons = json::array();
    for (size_t i = 0; i < runs.size(); ++i) {
        for (size_t j = i + 1; j < runs.size(); ++j) {
            if (!runs[i].completed || !runs[j].completed)
                continue;
            const SolverRun* test = &runs[i];
            const SolverRun* ref = &runs[j];
            if (reference_priority(test->name) > reference_priority(ref->name))
                std::swap(test, ref);
            const ComparisonReport rep =
                make_comparison(to_string(cfg.scenario), test->final_state, ref->final_state,
                                cfg.cs2, cfg.nu, test->steady, test->steady_steps);
            json c;
            c["test"] = test->name;
            c["reference"] = ref->name;
            c["rel_l2_error_vx"] = rep.rel_l2_error;
            c["max_abs_error_vx"] = rep.max_abs_error;
            c["reynolds_reference"] = rep.reynolds;
            c["mach2"] = rep.mach2;
            c["max_density_fluct"] = rep.max_density_fluct;
            c["steady"] = rep.steady;
            c["steps_to_steady"] = rep.steps_to_steady;
            comparisons.push_back(std::move(c));
        }
    }
    report["comparisons"] = std::move(comparisons);

    write_fluid_outputs(cfg, runs, report);
    const bool diverged =
        std::any_of(runs.begin(), runs.end(), [](const SolverRun& r) { return !r.completed; });
    return diverged ? exit_divergence : exit_ok;
}

int run_logistic(const RunConfig& cfg, std::ostream& log) {
    LogisticParams p{cfg.logistic_a(), cfg.b, cfg.f};
    json report;
    report["scenario"] = "logistic";
    report["a"] = p.a;
    report["b"] = p.b;
    report["f"] = p.f;
    report["g2"] = p.g2();
    report["dt"] = cfg.dt;
    report["steps"] = cfg.steps;
    report["x0"] = cfg.x0;

    const Attractors fixed = attractors(p);
    report["x_stable"] = fixed.stable;
    report["x_unstable"] = fixed.unstable;
    report["c2_fixed_point"] = c2_fixed_point(p);

    int code = exit_ok;
    std::vector<LabeledSeries> labeled;
    std::vector<PlotSeries> plot;
    auto record = [&](const std::string& name, const Trajectory& traj, int comp) {
        ProbeSeries ps{{0.0, 0.0}, {0, 0}, ProbeQuantity::vx, {}};
        for (size_t s = 0; s < traj.steps(); ++s)
            ps.samples.emplace_back(static_cast<double>(s) * traj.dt, traj.at(s, comp));
        labeled.push_back({name, ps});
        plot.push_back({name, labeled.back().series.samples});
        report["final_" + name] = traj.final_value(comp);
    };
    try {
        record("euler", euler_logistic(cfg.x0, p, cfg.dt, cfg.steps), 0);
        record("c2", c2_logistic(cfg.x0, p, cfg.dt, cfg.steps), 0);
        report["final_gap"] =
            std::fabs(report["final_euler"].get<double>() - report["final_c2"].get<double>());
    } catch (const DivergenceError& e) {
        report["diverged_at_step"] = e.step();
        report["diverged_field"] = e.field();
        log << "divergence: " << e.what() << "\n";
        code = exit_divergence;
    }

    // the logistic series reuse the probe CSV layout with quantity "x"
    std::string csv = "time,quantity,probe_x,probe_y,solver,value\n";
    for (const auto& ls : labeled)
        for (const auto& [t, v] : ls.series.samples)
            csv += fmt_g17(t) + ",x,0,0," + ls.solver + "," + fmt_g17(v) + "\n";
    write_text_file(cfg.output_dir + "/probes.csv", csv);
    emit_plot(plot, "forced logistic: x(t)", "t", "x", cfg.output_dir + "/plot_x.svg");
    write_text_file(cfg.output_dir + "/report.json", report.dump(2) + "\n");
    return code;
}

int run_impl(const RunConfig& cfg, std::ostream& log) {
    if (cfg.scenario != Scenario::logistic && cfg.grid_n >= 64 && cfg.has_solver(Solver::c2) &&
        !cfg.allow_large_memory) {
        throw ConfigError("the c2 solver at grid_n >= 64 holds two dense (4 n^2)^2 matrices "
                          "(~4.3 GiB at n = 64); pass allow_large_memory = true to proceed");
    }
    fs::create_directories(cfg.output_dir);
    return cfg.scenario == Scenario::logistic ? run_logistic(cfg, log) : run_fluid(cfg, log);
}

} // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    try {
        return run_impl(cfg, log);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::domain_error& e) {
        log << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const fs::filesystem_error& e) {
        log << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::ios_base::failure& e) {
        log << "i/o error: " << e.what() << "\n";
        return exit_io;
    }
}

int verify(const RunConfig& cfg, std::ostream& log) {
    try {
        if (!fs::is_directory(cfg.output_dir)) {
            log << "verify: no stored outputs at '" << cfg.output_dir << "'\n";
            return exit_io;
        }
        RunConfig replay = cfg;
        replay.output_dir = cfg.output_dir + ".verify";
        replay.quiet = true;
        const int code = run(replay, log);
        if (code != exit_ok) {
            fs::remove_all(replay.output_dir);
            return code;
        }
        std::vector<fs::path> produced;
        for (const auto& entry : fs::directory_iterator(replay.output_dir))
            if (entry.is_regular_file())
                produced.push_back(entry.path());
        std::sort(produced.begin(), produced.end());

        int mismatches = 0;
        for (const auto& path : produced) {
            const fs::path golden = fs::path(cfg.output_dir) / path.filename();
            if (!fs::exists(golden)) {
                log << "verify: missing golden file " << golden << "\n";
                ++mismatches;
                continue;
            }
            const std::string got = read_text_file(path.string());
            const std::string want = read_text_file(golden.string());
            std::string diff;
            if (path.extension() == ".svg") {
                if (got != want)
                    diff = "svg bytes differ";
            } else {
                diff = compare_numeric_text(got, want, cfg.verify_rtol, 1e-14);
            }
            if (!diff.empty()) {
                log << "verify: " << path.filename().string() << ": " << diff << "\n";
                ++mismatches;
            }
        }
        fs::remove_all(replay.output_dir);
        if (mismatches > 0) {
            log << "verify: " << mismatches << " file(s) differ\n";
            return exit_verify_mismatch;
        }
        if (!cfg.quiet)
            log << "verify: " << produced.size() << " file(s) match\n";
        return exit_ok;
    } catch (const std::ios_base::failure& e) {
        log << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const fs::filesystem_error& e) {
        log << "i/o error: " << e.what() << "\n";
        return exit_io;
    }
}

} // namespace c2flow
