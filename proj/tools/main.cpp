// Batch CLI: `c2flow run <config>` executes a configured scenario and emits
// CSV/JSON/SVG artifacts; `c2flow verify <config>` replays it against stored
// outputs.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "c2flow/config.hpp"
#include "c2flow/errors.hpp"
#include "c2flow/runner.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::string solvers;
    bool allow_large_memory = false;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("config", args.config_path, "run configuration file (key = value)")
        ->required();
    cmd->add_option("--out", args.out_dir, "override output_dir");
    cmd->add_option("--solvers", args.solvers, "override solver set, e.g. c2,nshj,ns");
    cmd->add_flag("--allow-large-memory", args.allow_large_memory,
                  "permit the c2 solver on grids of 64^2 and above");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

c2flow::RunConfig load(const CommonArgs& args) {
    c2flow::RunConfig cfg = c2flow::parse_config_file(args.config_path);
    if (!args.out_dir.empty())
        cfg.output_dir = args.out_dir;
    if (!args.solvers.empty()) {
        // route the override through the config parser to validate the names
        const c2flow::RunConfig tmp = c2flow::parse_config_text(
            "scenario = " + std::string(to_string(cfg.scenario)) +
                "\nsolvers = " + args.solvers + "\n",
            "--solvers");
        cfg.solvers = tmp.solvers;
    }
    if (args.allow_large_memory)
        cfg.allow_large_memory = true;
    if (args.quiet)
        cfg.quiet = true;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"second-order Carleman steady-state flow runner"};
    app.require_subcommand(1);

    CommonArgs run_args, verify_args;
    CLI::App* run_cmd = app.add_subcommand("run", "execute a configured run");
    add_common(run_cmd, run_args);
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "replay a run and compare against the stored outputs "
                  "(numeric tolerance verify_rtol, absolute floor 1e-14; SVG byte-exact)");
    add_common(verify_cmd, verify_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed())
            return c2flow::run(load(run_args), std::cerr);
        return c2flow::verify(load(verify_args), std::cerr);
    } catch (const c2flow::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return c2flow::exit_config;
    }
}
