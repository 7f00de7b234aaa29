#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lvp/errors.hpp"

namespace lvp {

// How the threshold normalization scale sigma is computed.
//   signal:  sample standard deviation of the variability signal itself
//   returns: sample standard deviation of the one-step log-returns
enum class SigmaMode { signal, returns };

inline const char* to_string(SigmaMode mode) {
    return mode == SigmaMode::signal ? "signal" : "returns";
}

struct VariabilityParams {
    int window = 1;               // w, in trading days
    double delta_sigma = 2.0;     // threshold in units of sigma
    SigmaMode sigma_mode = SigmaMode::signal;
};

// Per-step variability: values[k] = |x(w+k) - mean(x(k..w+k-1))| for the
// trailing window of width w, defined for t = w .. T-1.
struct VariabilitySignal {
    std::vector<double> values;
    double sigma = 0.0;
    int window = 1;
};

// Multiset of low-variability period lengths, in units of the window width.
struct IntervalSet {
    std::vector<std::int64_t> lengths;
    std::string source;  // provenance tag (empirical parameters or surrogate seed)

    bool empty() const { return lengths.empty(); }
    std::size_t size() const { return lengths.size(); }
};

namespace detail {

inline double sample_stddev(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / double(v.size() - 1));
}

}  // namespace detail

// Deviation of each log-price from the trailing mean of the previous
// `window` log-prices. For window = 1 this is the absolute one-step
// log-return. Requires at least window + 1 observations.
inline VariabilitySignal compute_variability(std::span<const double> log_prices, int window,
                                             SigmaMode sigma_mode = SigmaMode::signal) {
    if (window < 1) throw DomainError("window must be >= 1");
    const std::size_t w = std::size_t(window);
    if (log_prices.size() < w + 1)
        throw InsufficientDataError("series of length " + std::to_string(log_prices.size()) +
                                    " too short for window " + std::to_string(window) +
                                    " (need at least " + std::to_string(w + 1) + ")");

    VariabilitySignal signal;
    signal.window = window;
    signal.values.reserve(log_prices.size() - w);

    if (window == 1) {
        for (std::size_t t = 1; t < log_prices.size(); ++t)
            signal.values.push_back(std::fabs(log_prices[t] - log_prices[t - 1]));
    } else {
        // Rolling window sum, re-accumulated periodically to keep the
        // trailing mean exact over long series.
        double sum = 0.0;
        for (std::size_t i = 0; i < w; ++i) sum += log_prices[i];
        std::size_t since_rebuild = 0;
        for (std::size_t t = w; t < log_prices.size(); ++t) {
            signal.values.push_back(std::fabs(log_prices[t] - sum / double(w)));
            sum += log_prices[t] - log_prices[t - w];
            if (++since_rebuild == 4096) {
                sum = 0.0;
                for (std::size_t i = t + 1 - w; i <= t; ++i) sum += log_prices[i];
                since_rebuild = 0;
            }
        }
    }

    if (sigma_mode == SigmaMode::signal) {
        signal.sigma = detail::sample_stddev(signal.values);
    } else {
        std::vector<double> diffs;
        diffs.reserve(log_prices.size() - 1);
        for (std::size_t t = 1; t < log_prices.size(); ++t)
            diffs.push_back(log_prices[t] - log_prices[t - 1]);
        signal.sigma = detail::sample_stddev(diffs);
    }
    return signal;
}

// Maximal runs of consecutive steps with variability strictly below
// delta_sigma * sigma. A run of s steps yields an interval of length
// floor(s / w); zero-length results are dropped. Runs truncated by either
// series boundary are counted.
inline IntervalSet extract_intervals(const VariabilitySignal& signal, double delta_sigma) {
    if (!(delta_sigma > 0.0)) throw DomainError("delta_sigma must be positive");
    if (signal.values.empty()) throw InsufficientDataError("empty variability signal");
    if (signal.window < 1) throw DomainError("signal window must be >= 1");

    const double threshold = delta_sigma * signal.sigma;
    IntervalSet intervals;
    std::int64_t run = 0;
    auto close_run = [&] {
        const std::int64_t tau = run / signal.window;
        if (tau >= 1) intervals.lengths.push_back(tau);
        run = 0;
    };
    for (double v : signal.values) {
        if (v < threshold) {
            ++run;
        } else if (run > 0) {
            close_run();
        }
    }
    if (run > 0) close_run();
    return intervals;
}

}  // namespace lvp
