#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "lvp/distribution.hpp"
#include "lvp/errors.hpp"
#include "lvp/silence.hpp"
#include "lvp/variability.hpp"

namespace lvp {

struct AnalysisOptions {
    int window = 1;
    double delta_sigma = 2.0;
    SigmaMode sigma_mode = SigmaMode::signal;
    double cutoff_fraction = 0.25;
    std::optional<std::int64_t> fit_min;  // default 2
    std::optional<std::int64_t> fit_max;  // default floor(N/4)
    std::int64_t plateau_lower = 20;
};

// Everything one pass over a dataset produces. Fit, curve and plateau are
// optional: small inputs can make any of them infeasible, and the summary
// reports the reason instead of failing the run.
struct AnalysisResult {
    IntervalSet intervals;
    CumulativeDistribution dist;
    std::int64_t r1 = 0;
    std::int64_t r10 = 0;

    std::optional<double> sigma;      // empirical runs only
    std::optional<double> delta_abs;  // empirical runs only

    std::optional<ScalingFit> fit;
    std::string fit_error;
    std::optional<SilenceCurve> curve;
    std::string curve_error;
    std::optional<double> plateau;
    std::string plateau_error;
};

// Distribution, fit, silence curve and plateau from a ready interval set.
inline AnalysisResult analyze_intervals(IntervalSet intervals, const AnalysisOptions& options,
                                        std::optional<double> alpha_ref = std::nullopt) {
    AnalysisResult result;
    result.dist = build_cumulative(intervals);
    result.intervals = std::move(intervals);
    result.r1 = result.dist.total;
    result.r10 = raw_count(result.dist, 10);

    const std::int64_t fit_min = options.fit_min.value_or(2);
    const std::int64_t fit_max = options.fit_max.value_or(result.dist.longest / 4);
    try {
        result.fit = fit_alpha(result.dist, fit_min, fit_max);
    } catch (const Error& e) {
        result.fit_error = e.what();
    }

    try {
        result.curve = silence_curve(result.dist, options.cutoff_fraction);
        result.curve->alpha_ref = alpha_ref ? alpha_ref
                                 : result.fit ? std::optional<double>(result.fit->alpha)
                                              : std::nullopt;
    } catch (const Error& e) {
        result.curve_error = e.what();
    }

    if (result.curve) {
        try {
            result.plateau = plateau_estimate(*result.curve, options.plateau_lower);
        } catch (const Error& e) {
            result.plateau_error = e.what();
        }
    } else {
        result.plateau_error = "no silence curve";
    }
    return result;
}

// Full pipeline over a log-price series: variability signal, threshold at
// delta_sigma * sigma, interval extraction, then analyze_intervals. Throws
// InsufficientDataError when no step stays below the threshold.
inline AnalysisResult analyze_log_prices(std::span<const double> log_prices,
                                         const AnalysisOptions& options,
                                         const std::string& source_tag) {
    const VariabilitySignal signal =
        compute_variability(log_prices, options.window, options.sigma_mode);
    IntervalSet intervals = extract_intervals(signal, options.delta_sigma);
    if (intervals.empty())
        throw InsufficientDataError("no low-variability periods at this threshold");
    intervals.source = source_tag + " w=" + std::to_string(options.window) +
                       " delta=" + std::to_string(options.delta_sigma) + "sigma(" +
                       to_string(options.sigma_mode) + ")";

    AnalysisResult result = analyze_intervals(std::move(intervals), options);
    result.sigma = signal.sigma;
    result.delta_abs = options.delta_sigma * signal.sigma;
    return result;
}

}  // namespace lvp
