#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "c2flow/carleman.hpp"
#include "c2flow/csvio.hpp"
#include "c2flow/errors.hpp"
#include "c2flow/logistic.hpp"
#include "c2flow/plot.hpp"
#include "c2flow/runner.hpp"
#include "c2flow/scenario.hpp"

using namespace c2flow;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "c2flow_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunConfig smoke_config(const std::string& name) {
    RunConfig cfg = default_config(Scenario::kolmogorov);
    cfg.grid_n = 16;
    cfg.steps = 40;
    cfg.snapshot_every = 20;
    cfg.solvers = {Solver::c2, Solver::nshj, Solver::ns};
    cfg.quiet = true;
    cfg.output_dir = fresh_dir(name).string();
    return cfg;
}

} // namespace

TEST_CASE("config parsing: scenario defaults") {
    SUBCASE("kolmogorov carries the reference-run defaults") {
        const RunConfig c = parse_config_text("scenario = kolmogorov\n", "test");
        CHECK(c.grid_n == 64);
        CHECK(c.nu == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
        CHECK(c.cs2 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(c.u0 == 0.05);
        CHECK(c.f0 == 0.009);
        CHECK(c.dt == doctest::Approx(0.012).epsilon(1e-12)); // T / 500, T = 1/nu
        CHECK(c.steps == 2500);
        CHECK(c.probes.size() == 3);
        CHECK(c.probes[1] == std::pair{1.5, 1.5});
        CHECK(c.probes[2] == std::pair{0.7, 2.5});
    }
    SUBCASE("dt follows an overridden viscosity unless pinned") {
        const RunConfig c = parse_config_text("scenario = kolmogorov\nnu = 0.25\n", "test");
        CHECK(c.dt == doctest::Approx((1.0 / 0.25) / 500.0).epsilon(1e-12));
        const RunConfig pinned =
            parse_config_text("scenario = kolmogorov\nnu = 0.25\ndt = 0.01\n", "test");
        CHECK(pinned.dt == 0.01);
    }
    SUBCASE("two_mode defaults") {
        const RunConfig c = parse_config_text("scenario = two_mode\n", "test");
        CHECK(c.u1 == 0.05);
        CHECK(c.u2 == doctest::Approx(0.05 / 8.0));
        CHECK(c.f1 == 0.01);
        CHECK(c.f2 == doctest::Approx(0.01 / 8.0));
        CHECK(c.nu == doctest::Approx(1.0 / 16.0));
        CHECK(c.dt == 0.03);
        CHECK(c.steps == 3000);
    }
    SUBCASE("logistic defaults and the a/g2 coupling") {
        const RunConfig c = parse_config_text("scenario = logistic\n", "test");
        CHECK(c.b == 1.0);
        CHECK(c.f == 1.0);
        CHECK(c.g2 == 0.1);
        CHECK(c.logistic_a() == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
        CHECK(c.dt == 0.01);
        CHECK(c.steps == 700);

        const RunConfig explicit_a =
            parse_config_text("scenario = logistic\na = 2.5\n", "test");
        CHECK(explicit_a.logistic_a() == 2.5);
    }
}

TEST_CASE("config parsing: syntax and validation") {
    CHECK_THROWS_AS(parse_config_text("grid_n = 32\n", "test"), ConfigError); // no scenario
    CHECK_THROWS_AS(parse_config_text("scenario = vortex\n", "test"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("scenario = kolmogorov\nbogus_key = 1\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("scenario = kolmogorov\ngrid_n\n", "test"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("scenario = kolmogorov\ngrid_n = seven\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("scenario = kolmogorov\ngrid_n = 15\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("scenario = kolmogorov\nsolvers =\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text("scenario = kolmogorov\nprobes = 1.5\n", "test"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config_text("scenario = logistic\na = 2.0\ng2 = 0.2\n", "test"),
        ConfigError); // inconsistent pair
    CHECK_THROWS_AS(parse_config_text("scenario = logistic\ng2 = 0.3\n", "test"),
                    ConfigError); // runaway regime

    SUBCASE("comments, blanks and spacing are tolerated") {
        const RunConfig c = parse_config_text("# reference run\n"
                                              "scenario = kolmogorov   # inline comment\n"
                                              "\n"
                                              "  grid_n=32\n"
                                              "solvers = nshj , ns , nshj\n"
                                              "probes = 0,0 ; 1.5 , 1.5\n",
                                              "test");
        CHECK(c.grid_n == 32);
        CHECK(c.solvers == std::vector{Solver::nshj, Solver::ns}); // deduplicated
        CHECK(c.probes.size() == 2);
    }
    SUBCASE("file round-trip") {
        const fs::path dir = fresh_dir("config_file");
        const fs::path path = dir / "run.cfg";
        write_text_file(path.string(), "scenario = kolmogorov\ngrid_n = 16\n");
        CHECK(parse_config_file(path.string()).grid_n == 16);
        CHECK_THROWS_AS(parse_config_file((dir / "missing.cfg").string()), ConfigError);
    }
}

TEST_CASE("build_initial_state and build_forcing") {
    SUBCASE("kolmogorov fields") {
        RunConfig cfg = default_config(Scenario::kolmogorov);
        cfg.grid_n = 16;
        const GridSpec g = make_grid(cfg);
        const FluidState s = build_initial_state(cfg);
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                CHECK(s.ax.at(ix, iy) == 0.05 * std::cos(g.y(iy)));
                CHECK(s.ay.at(ix, iy) == 0.05 * std::cos(g.x(ix)));
                CHECK(s.rho.at(ix, iy) == 1.0);
                CHECK(s.chi.at(ix, iy) == 0.0);
            }
        const auto [fx, fy] = build_forcing(cfg);
        for (int iy = 0; iy < g.n; ++iy)
            CHECK(fx.at(3, iy) == 0.009 * std::cos(g.y(iy)));
        CHECK(fy.max_abs() == 0.0);
    }
    SUBCASE("two_mode velocity is divergence-free and vanishes at the origin") {
        RunConfig cfg = default_config(Scenario::two_mode);
        cfg.grid_n = 32;
        const FluidState s = build_initial_state(cfg);
        const auto [vx, vy] = velocity(s);
        CHECK(vx.at(0, 0) == 0.0);
        const Field2D div = divergence(vx, vy);
        CHECK(div.max_abs() < 1e-14);
        const auto [fx, fy] = build_forcing(cfg);
        const GridSpec g = make_grid(cfg);
        for (int iy = 0; iy < g.n; ++iy)
            CHECK(fx.at(0, iy) == doctest::Approx(0.01 * std::cos(g.y(iy)) +
                                                  0.00125 * std::cos(2.0 * g.y(iy)))
                                      .epsilon(1e-15));
    }
    SUBCASE("logistic has no fluid state") {
        CHECK_THROWS_AS(build_initial_state(default_config(Scenario::logistic)), ConfigError);
        CHECK_THROWS_AS(build_forcing(default_config(Scenario::logistic)), ConfigError);
    }
}

TEST_CASE("run: fluid smoke run emits the full artifact set") {
    const RunConfig cfg = smoke_config("smoke");
    std::ostringstream log;
    REQUIRE(run(cfg, log) == exit_ok);

    const fs::path dir = cfg.output_dir;
    REQUIRE(fs::exists(dir / "probes.csv"));
    REQUIRE(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "plot_vx.svg"));
    CHECK(fs::exists(dir / "plot_vy.svg"));
    for (const char* solver : {"c2", "nshj", "ns"})
        for (int step : {0, 20, 40})
            CHECK(fs::exists(dir / ("snapshot_" + std::string(solver) + "_step" +
                                    std::to_string(step) + ".csv")));

    SUBCASE("probe CSV layout") {
        std::ifstream in(dir / "probes.csv");
        std::string header;
        std::getline(in, header);
        CHECK(header == "time,quantity,probe_x,probe_y,solver,value");
        size_t rows = 0;
        for (std::string line; std::getline(in, line);)
            if (!line.empty())
                ++rows;
        // (steps + 1) samples x 3 probes x 2 quantities x 3 solvers
        CHECK(rows == static_cast<size_t>(41 * 3 * 2 * 3));
    }
    SUBCASE("report carries solver metrics and pairwise comparisons") {
        const json report = json::parse(read_text_file((dir / "report.json").string()));
        CHECK(report["scenario"] == "kolmogorov");
        CHECK(report["solvers"].contains("c2"));
        CHECK(report["solvers"]["c2"].contains("closure_defect"));
        CHECK(report["solvers"]["nshj"].contains("max_density_fluct"));
        CHECK_FALSE(report["solvers"]["ns"].contains("max_density_fluct"));
        REQUIRE(report["comparisons"].size() == 3);
        for (const auto& c : report["comparisons"]) {
            CHECK(c["rel_l2_error_vx"].get<double>() >= 0.0);
            CHECK(c["rel_l2_error_vx"].get<double>() < 0.5);
        }
    }
    SUBCASE("snapshot preamble") {
        const std::string snap =
            read_text_file((dir / "snapshot_nshj_step20.csv").string());
        CHECK(snap.find("# n=16\n") != std::string::npos);
        CHECK(snap.find("# step=20\n") != std::string::npos);
        CHECK(snap.find("# scenario=kolmogorov\n") != std::string::npos);
        CHECK(snap.find("ix,iy,rho,chi,ax,ay\n") != std::string::npos);
    }
}

TEST_CASE("run: determinism, gating and failure modes") {
    SUBCASE("identical configs give byte-identical artifacts") {
        RunConfig a = smoke_config("det_a");
        a.solvers = {Solver::nshj, Solver::ns};
        RunConfig b = a;
        b.output_dir = fresh_dir("det_b").string();
        std::ostringstream log;
        REQUIRE(run(a, log) == exit_ok);
        REQUIRE(run(b, log) == exit_ok);
        for (const char* name : {"probes.csv", "report.json", "plot_vx.svg"})
            CHECK(read_text_file(a.output_dir + "/" + name) ==
                  read_text_file(b.output_dir + "/" + name));
    }
    SUBCASE("without the c2 solver no dense matrix is ever allocated") {
        RunConfig cfg = smoke_config("gating");
        cfg.solvers = {Solver::nshj};
        REQUIRE(DenseMatrix::bytes_in_use() == 0);
        DenseMatrix::reset_peak();
        const size_t before = DenseMatrix::bytes_peak();
        std::ostringstream log;
        REQUIRE(run(cfg, log) == exit_ok);
        CHECK(DenseMatrix::bytes_peak() == before);
    }
    SUBCASE("c2 on a 64^2 grid requires the large-memory acknowledgment") {
        RunConfig cfg = smoke_config("large");
        cfg.grid_n = 64;
        std::ostringstream log;
        CHECK(run(cfg, log) == exit_config);
        CHECK(log.str().find("allow_large_memory") != std::string::npos);
    }
    SUBCASE("divergence keeps partial outputs and reports exit code 3") {
        RunConfig cfg = smoke_config("blowup");
        cfg.grid_n = 8;
        cfg.solvers = {Solver::nshj};
        cfg.dt = 50.0;
        cfg.steps = 20000;
        std::ostringstream log;
        CHECK(run(cfg, log) == exit_divergence);
        CHECK(fs::exists(fs::path(cfg.output_dir) / "probes.csv"));
        const json report =
            json::parse(read_text_file(cfg.output_dir + "/report.json"));
        CHECK(report["solvers"]["nshj"].contains("diverged_at_step"));
    }
}

TEST_CASE("run: logistic scenario") {
    RunConfig cfg = default_config(Scenario::logistic);
    cfg.quiet = true;
    cfg.output_dir = fresh_dir("logistic").string();
    std::ostringstream log;
    REQUIRE(run(cfg, log) == exit_ok);

    const json report = json::parse(read_text_file(cfg.output_dir + "/report.json"));
    const LogisticParams p{cfg.logistic_a(), cfg.b, cfg.f};
    CHECK(report["x_stable"].get<double>() ==
          doctest::Approx(attractors(p).stable).epsilon(1e-12));
    CHECK(report["final_euler"].get<double>() ==
          doctest::Approx(attractors(p).stable).epsilon(1e-5));
    CHECK(report["final_c2"].get<double>() ==
          doctest::Approx(c2_fixed_point(p)).epsilon(1e-5));
    CHECK(fs::exists(fs::path(cfg.output_dir) / "plot_x.svg"));
    CHECK(fs::exists(fs::path(cfg.output_dir) / "probes.csv"));
}

TEST_CASE("verify") {
    RunConfig cfg = smoke_config("verify");
    cfg.solvers = {Solver::nshj};
    std::ostringstream log;
    REQUIRE(run(cfg, log) == exit_ok);

    SUBCASE("clean replay matches") {
        CHECK(verify(cfg, log) == exit_ok);
    }
    SUBCASE("tampered goldens are detected") {
        const std::string path = cfg.output_dir + "/probes.csv";
        std::string text = read_text_file(path);
        const auto pos = text.find_last_of(',');
        text.replace(pos + 1, std::string::npos, "0.123456\n");
        write_text_file(path, text);
        CHECK(verify(cfg, log) == exit_verify_mismatch);
    }
    SUBCASE("missing golden directory is an i/o error") {
        RunConfig missing = cfg;
        missing.output_dir = (fs::temp_directory_path() / "c2flow_tests" / "nowhere").string();
        CHECK(verify(missing, log) == exit_io);
    }
}

TEST_CASE("emit_plot / render_svg") {
    SUBCASE("empty series list still renders axes") {
        const std::string svg = render_svg({}, "empty", "t", "v");
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(svg.find("<polyline") == std::string::npos);
    }
    SUBCASE("constant series draws a horizontal polyline") {
        const PlotSeries s{"flat", {{0.0, 1.0}, {1.0, 1.0}, {2.0, 1.0}}};
        const std::string svg = render_svg({&s, 1}, "t", "x", "y");
        CHECK(svg.find("<polyline") != std::string::npos);
        CHECK(svg.find("flat") != std::string::npos);
    }
    SUBCASE("series of different lengths render to their own extents") {
        const std::vector<PlotSeries> series{{"a", {{0.0, 0.0}, {1.0, 1.0}}},
                                             {"b", {{0.0, 2.0}, {0.5, 1.0}, {3.0, -1.0}}}};
        const std::string svg = render_svg(series, "t", "x", "y");
        CHECK(svg.find("\"a\"") == std::string::npos); // names escaped into text nodes
        size_t count = 0;
        for (size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos)
            ++count;
        CHECK(count == 2);
    }
    SUBCASE("deterministic bytes") {
        const std::vector<PlotSeries> series{{"s", {{0.0, 0.3}, {0.7, -0.2}}}};
        CHECK(render_svg(series, "t", "x", "y") == render_svg(series, "t", "x", "y"));
    }
    SUBCASE("special characters in names are escaped") {
        const PlotSeries s{"a<b&c", {{0.0, 0.0}, {1.0, 1.0}}};
        const std::string svg = render_svg({&s, 1}, "t", "x", "y");
        CHECK(svg.find("a&lt;b&amp;c") != std::string::npos);
    }
}

TEST_CASE("csv formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 6.600473799907084e-5, -2.5e17, 0.0}) {
        const std::string s = fmt_g17(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(compare_numeric_text("a,1.5,b", "a,1.5,b", 1e-12, 1e-14).empty());
    CHECK(compare_numeric_text("a,1.5000000001,b", "a,1.5,b", 1e-6, 0.0).empty());
    CHECK_FALSE(compare_numeric_text("a,1.51,b", "a,1.5,b", 1e-6, 1e-14).empty());
    CHECK_FALSE(compare_numeric_text("a,1.5", "b,1.5", 1e-6, 1e-14).empty());
}
