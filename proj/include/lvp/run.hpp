#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lvp/analysis.hpp"
#include "lvp/errors.hpp"
#include "lvp/ingest.hpp"
#include "lvp/surrogate.hpp"
#include "lvp/tsv.hpp"

namespace lvp {

struct RunConfig {
    enum class Command { analyze, sweep, surrogate, fit, probability };

    Command command = Command::analyze;
    std::filesystem::path input;
    ColumnConfig columns;
    int window = 1;
    std::vector<double> deltas = {2.0};  // sigma units; one entry except for sweep
    SigmaMode sigma_mode = SigmaMode::signal;
    double cutoff_fraction = 0.25;
    std::optional<std::int64_t> fit_min;
    std::optional<std::int64_t> fit_max;
    std::int64_t plateau_lower = 20;
    std::int64_t surrogate_count = 1000000;
    double surrogate_alpha = 1.0;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = "out";
    int jobs = 0;  // sweep worker pool size; 0 = hardware default
};

inline const char* to_string(RunConfig::Command command) {
    switch (command) {
        case RunConfig::Command::analyze: return "analyze";
        case RunConfig::Command::sweep: return "sweep";
        case RunConfig::Command::surrogate: return "surrogate";
        case RunConfig::Command::fit: return "fit";
        case RunConfig::Command::probability: return "probability";
    }
    return "?";
}

// Collects output files in a staging directory next to the target, then
// renames them into place once the whole run has succeeded. A failed run
// leaves no partial outputs behind.
class OutputStager {
public:
    explicit OutputStager(std::filesystem::path out_dir) : final_dir_(std::move(out_dir)) {
        const auto tag = std::chrono::steady_clock::now().time_since_epoch().count();
        stage_dir_ = final_dir_;
        stage_dir_ += ".stage-" + std::to_string(tag);
        std::filesystem::create_directories(stage_dir_);
    }

    OutputStager(const OutputStager&) = delete;
    OutputStager& operator=(const OutputStager&) = delete;

    ~OutputStager() {
        if (!committed_) {
            std::error_code ec;
            std::filesystem::remove_all(stage_dir_, ec);
        }
    }

    void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
        std::ofstream os(stage_dir_ / name, std::ios::binary);
        if (!os) throw Error("cannot create " + (stage_dir_ / name).string());
        body(os);
        os.flush();
        if (!os) throw Error("failed writing " + (stage_dir_ / name).string());
        names_.push_back(name);
    }

    void commit() {
        std::filesystem::create_directories(final_dir_);
        for (const auto& name : names_)
            std::filesystem::rename(stage_dir_ / name, final_dir_ / name);
        std::filesystem::remove_all(stage_dir_);
        committed_ = true;
    }

private:
    std::filesystem::path final_dir_;
    std::filesystem::path stage_dir_;
    std::vector<std::string> names_;
    bool committed_ = false;
};

namespace detail {

inline AnalysisOptions analysis_options(const RunConfig& config, double delta_sigma) {
    AnalysisOptions options;
    options.window = config.window;
    options.delta_sigma = delta_sigma;
    options.sigma_mode = config.sigma_mode;
    options.cutoff_fraction = config.cutoff_fraction;
    options.fit_min = config.fit_min;
    options.fit_max = config.fit_max;
    options.plateau_lower = config.plateau_lower;
    return options;
}

inline Records run_metadata(const RunConfig& config) {
    Records meta;
    meta.add("command", to_string(config.command));
    if (!config.input.empty()) meta.add("input", config.input.string());
    return meta;
}

inline void check_config(const RunConfig& config) {
    using Command = RunConfig::Command;
    if (config.window < 1) throw ParseError("--window must be >= 1");
    if (config.deltas.empty()) throw ParseError("at least one --delta required");
    for (double d : config.deltas)
        if (!(d > 0.0)) throw ParseError("--delta must be positive");
    if (config.command != Command::sweep && config.deltas.size() != 1)
        throw ParseError("exactly one --delta expected");
    if (!(config.cutoff_fraction > 0.0) || !(config.cutoff_fraction > 0.0 && config.cutoff_fraction <= 1.0))
        throw ParseError("--cutoff-fraction must be in (0, 1]");
    if (config.fit_min && *config.fit_min < 1) throw ParseError("--fit-min must be >= 1");
    if (config.fit_min && config.fit_max && !(*config.fit_min < *config.fit_max))
        throw ParseError("--fit-min must be below --fit-max");
    if (config.plateau_lower < 1) throw ParseError("--plateau-lower must be >= 1");
    if (config.command == Command::surrogate) {
        if (config.surrogate_count < 1) throw ParseError("--surrogate-count must be >= 1");
        if (!(config.surrogate_alpha > 0.0)) throw ParseError("--surrogate-alpha must be positive");
    } else if (config.input.empty()) {
        throw ParseError("--input is required");
    }
    if (config.jobs < 0) throw ParseError("--jobs must be >= 0");
    if (config.out_dir.empty()) throw ParseError("--out-dir must not be empty");
}

inline void cmd_single_series(const RunConfig& config) {
    const PriceSeries series = load_price_csv(config.input, config.columns);
    const std::vector<double> x = to_log_prices(series);
    const AnalysisOptions options = analysis_options(config, config.deltas.front());
    const AnalysisResult result = analyze_log_prices(x, options, series.symbol);

    Records meta = run_metadata(config);
    meta.add("symbol", series.symbol);
    meta.add("source", result.intervals.source);

    OutputStager stager(config.out_dir);
    const bool with_knots = config.command != RunConfig::Command::probability;
    const bool with_curve = config.command != RunConfig::Command::fit;
    if (with_knots)
        stager.write("knots.tsv",
                     [&](std::ostream& os) { write_knots_tsv(os, result.dist, meta); });
    if (with_curve)
        stager.write("curve.tsv", [&](std::ostream& os) {
            write_curve_tsv(os, result.curve ? &*result.curve : nullptr, meta);
        });
    stager.write("summary.tsv", [&](std::ostream& os) {
        write_summary_tsv(os, meta, summary_rows(result, options));
    });

    if (config.command == RunConfig::Command::fit && !result.fit)
        throw InsufficientDataError(result.fit_error);
    if (config.command == RunConfig::Command::probability && !result.curve)
        throw InsufficientDataError(result.curve_error);
    stager.commit();
}

inline void cmd_sweep(const RunConfig& config) {
    const PriceSeries series = load_price_csv(config.input, config.columns);
    const std::vector<double> x = to_log_prices(series);

    // One signal per window is shared by every cell; only the threshold
    // varies across the sweep.
    const VariabilitySignal signal = compute_variability(x, config.window, config.sigma_mode);

    std::vector<SweepRow> rows(config.deltas.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < config.deltas.size();) {
            SweepRow& row = rows[i];
            row.delta_sigma = config.deltas[i];
            try {
                IntervalSet intervals = extract_intervals(signal, config.deltas[i]);
                if (intervals.empty())
                    throw InsufficientDataError("no low-variability periods at this threshold");
                const AnalysisOptions options = analysis_options(config, config.deltas[i]);
                const AnalysisResult result = analyze_intervals(std::move(intervals), options);
                row.r1 = result.r1;
                row.r10 = result.r10;
                row.longest = result.dist.longest;
                if (result.fit) row.alpha = result.fit->alpha;
                row.status = result.fit ? "ok" : "ok (" + result.fit_error + ")";
            } catch (const Error& e) {
                row.status = e.what();
            }
        }
    };

    unsigned pool = config.jobs > 0 ? unsigned(config.jobs)
                                    : std::max(1u, std::min<unsigned>(
                                                       std::thread::hardware_concurrency(),
                                                       unsigned(config.deltas.size())));
    std::vector<std::thread> threads;
    for (unsigned i = 1; i < pool; ++i) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    Records meta = run_metadata(config);
    meta.add("symbol", series.symbol);
    meta.add("window", config.window);
    meta.add("sigma_mode", to_string(config.sigma_mode));
    meta.add("sigma", signal.sigma);

    OutputStager stager(config.out_dir);
    stager.write("sweep.tsv", [&](std::ostream& os) { write_sweep_tsv(os, meta, rows); });
    stager.commit();
}

inline void cmd_surrogate(const RunConfig& config) {
    const SurrogateParams params{config.surrogate_count, config.surrogate_alpha, config.seed};
    IntervalSet intervals = generate_power_law_intervals(params);
    const AnalysisOptions options = analysis_options(config, config.deltas.front());
    const AnalysisResult result =
        analyze_intervals(std::move(intervals), options, config.surrogate_alpha);

    Records meta = run_metadata(config);
    meta.add("source", result.intervals.source);
    meta.add("rng", std::string(kRngIdentity));
    meta.add("count", params.count);
    meta.add("alpha", params.alpha);
    meta.add("seed", params.seed);

    OutputStager stager(config.out_dir);
    stager.write("intervals.tsv",
                 [&](std::ostream& os) { write_intervals_tsv(os, result.intervals, meta); });
    stager.write("knots.tsv", [&](std::ostream& os) { write_knots_tsv(os, result.dist, meta); });
    stager.write("curve.tsv", [&](std::ostream& os) {
        write_curve_tsv(os, result.curve ? &*result.curve : nullptr, meta);
    });
    stager.write("summary.tsv", [&](std::ostream& os) {
        write_summary_tsv(os, meta, summary_rows(result, options, config.surrogate_alpha));
    });
    stager.commit();
}

}  // namespace detail

// Executes one configured run. Exit codes: 0 success, 1 validation error,
// 2 analysis error.
inline int run(const RunConfig& config) {
    try {
        detail::check_config(config);
        switch (config.command) {
            case RunConfig::Command::analyze:
            case RunConfig::Command::fit:
            case RunConfig::Command::probability:
                detail::cmd_single_series(config);
                break;
            case RunConfig::Command::sweep:
                detail::cmd_sweep(config);
                break;
            case RunConfig::Command::surrogate:
                detail::cmd_surrogate(config);
                break;
        }
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace lvp
