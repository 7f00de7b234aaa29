#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lvp/run.hpp"

namespace lvp::cli {

// Builds the command line front-end. Defaults mirror the headline analysis
// configuration: w = 1, delta = 2 sigma, cutoff N/4, fit range [2, N/4].
inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"low-variability period analysis of daily price series"};
    app.require_subcommand(1);

    RunConfig config;
    config.deltas.clear();
    std::string sigma_mode = "signal";
    std::int64_t fit_min = 0, fit_max = 0;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--input", config.input, "price CSV with a header row")->required();
        cmd->add_option("--date-col", config.columns.date_column, "date column name");
        cmd->add_option("--close-col", config.columns.close_column, "close column name");
        cmd->add_option("--window", config.window, "sliding window width w in trading days");
        cmd->add_option("--sigma-mode", sigma_mode,
                        "threshold scale: stddev of the variability signal or of one-step "
                        "returns")
            ->check(CLI::IsMember({"signal", "returns"}));
    };
    auto add_analysis = [&](CLI::App* cmd) {
        cmd->add_option("--cutoff-fraction", config.cutoff_fraction,
                        "silence curve upper limit as a fraction of N");
        cmd->add_option("--fit-min", fit_min, "lower end of the scaling fit range");
        cmd->add_option("--fit-max", fit_max, "upper end of the scaling fit range");
        cmd->add_option("--plateau-lower", config.plateau_lower,
                        "smallest n entering the plateau estimate");
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out-dir", config.out_dir, "output directory");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "knot table, silence curve and summary");
    add_input(analyze);
    analyze->add_option("--delta", config.deltas, "threshold in sigma units")->expected(0, 1);
    add_analysis(analyze);
    add_out(analyze);

    CLI::App* sweep = app.add_subcommand("sweep", "summary table over several thresholds");
    add_input(sweep);
    sweep->add_option("--delta", config.deltas, "threshold in sigma units (repeatable)");
    add_analysis(sweep);
    sweep->add_option("--jobs", config.jobs, "worker pool size (0 = hardware default)");
    add_out(sweep);

    CLI::App* fit = app.add_subcommand("fit", "knot table and scaling fit only");
    add_input(fit);
    fit->add_option("--delta", config.deltas, "threshold in sigma units")->expected(0, 1);
    add_analysis(fit);
    add_out(fit);

    CLI::App* probability =
        app.add_subcommand("probability", "silence-breaking curve and summary only");
    add_input(probability);
    probability->add_option("--delta", config.deltas, "threshold in sigma units")->expected(0, 1);
    add_analysis(probability);
    add_out(probability);

    CLI::App* surrogate =
        app.add_subcommand("surrogate", "synthetic power-law interval set and its analysis");
    surrogate->add_option("--surrogate-count", config.surrogate_count,
                          "number of intervals to draw");
    surrogate->add_option("--surrogate-alpha", config.surrogate_alpha, "target exponent");
    surrogate->add_option("--seed", config.seed, "generator seed");
    add_analysis(surrogate);
    add_out(surrogate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (analyze->parsed()) config.command = RunConfig::Command::analyze;
    if (sweep->parsed()) config.command = RunConfig::Command::sweep;
    if (fit->parsed()) config.command = RunConfig::Command::fit;
    if (probability->parsed()) config.command = RunConfig::Command::probability;
    if (surrogate->parsed()) config.command = RunConfig::Command::surrogate;

    if (config.deltas.empty()) config.deltas = {2.0};
    config.sigma_mode = sigma_mode == "returns" ? SigmaMode::returns : SigmaMode::signal;
    if (fit_min > 0) config.fit_min = fit_min;
    if (fit_max > 0) config.fit_max = fit_max;

    return run(config);
}

}  // namespace lvp::cli
