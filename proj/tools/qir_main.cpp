#include <cstdlib>
#include <iostream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "qir/commands.hpp"

namespace {

void apply_thread_cap() {
    const char* env = std::getenv("QIR_THREADS");
    if (env == nullptr) return;
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) omp_set_num_threads(static_cast<int>(v));
    // 0 (or unparsable) leaves the OpenMP default in place.
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"Entanglement-assisted ranging simulator"};
    app.require_subcommand(1);

    std::string config_path, config_q_path, config_c_path, spec_path, out_dir, csv_path, out_svg;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    bool seed_set = false, trials_set = false;

    auto add_overrides = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Override experiment.master_seed")
            ->each([&](const std::string&) { seed_set = true; });
        cmd->add_option("--trials", trials, "Override experiment.n_trials")
            ->each([&](const std::string&) { trials_set = true; });
    };

    CLI::App* sim = app.add_subcommand("simulate", "Run Monte Carlo trials for one config");
    sim->add_option("--config", config_path, "Run configuration file")->required();
    sim->add_option("--out", out_dir, "Output directory")->required();
    add_overrides(sim);

    CLI::App* sweep = app.add_subcommand("sweep", "Detection probability over an (eta, I) grid");
    sweep->add_option("--config", config_path, "Run configuration file")->required();
    sweep->add_option("--spec", spec_path, "Sweep specification file")->required();
    sweep->add_option("--out", out_dir, "Output directory")->required();
    add_overrides(sweep);

    CLI::App* cmp = app.add_subcommand("compare", "Quantum vs classical pipelines");
    cmp->add_option("--config-q", config_q_path, "Quantum (tmsv) configuration")->required();
    cmp->add_option("--config-c", config_c_path, "Classical configuration")->required();
    cmp->add_option("--out", out_dir, "Output directory")->required();
    add_overrides(cmp);

    CLI::App* plot = app.add_subcommand("plot", "Render a result CSV as a static SVG");
    plot->add_option("--csv", csv_path, "Input CSV (correlation series or sweep table)")
        ->required();
    plot->add_option("--out", out_svg, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qir::k_exit_config;
    }

    qir::CliOverrides overrides;
    if (seed_set) overrides.seed = seed;
    if (trials_set) overrides.trials = trials;

    if (sim->parsed()) return qir::cmd_simulate(config_path, out_dir, overrides);
    if (sweep->parsed()) return qir::cmd_sweep(config_path, spec_path, out_dir, overrides);
    if (cmp->parsed()) return qir::cmd_compare(config_q_path, config_c_path, out_dir, overrides);
    if (plot->parsed()) return qir::cmd_plot(csv_path, out_svg);
    return qir::k_exit_config;
}
