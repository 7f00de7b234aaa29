#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lvp/errors.hpp"
#include "lvp/variability.hpp"

namespace lvp {

// Cumulative length distribution R(n) = number of intervals with length >= n,
// stored as its change-point knots: one knot per distinct interval length,
// ascending in n with strictly decreasing counts. Between knots the raw step
// function is constant at the next knot's count; left of the first knot it
// equals `total`.
struct CumulativeDistribution {
    struct Knot {
        std::int64_t n = 0;
        std::int64_t count = 0;
    };
    std::vector<Knot> knots;
    std::int64_t total = 0;    // R(1), the number of intervals
    std::int64_t longest = 0;  // N, the longest interval length

    bool empty() const { return knots.empty(); }
};

struct ScalingFit {
    double alpha = 0.0;      // modulus of the log-log slope
    double r0 = 0.0;         // prefactor, R(n) ~ r0 * n^-alpha
    std::int64_t n_min = 0;  // fit range (inclusive)
    std::int64_t n_max = 0;
    double residual = 0.0;   // RMS residual in log-log space
    std::size_t knots_used = 0;
};

struct ExponentialFit {
    double rate = 0.0;       // decay rate b, R(n) ~ r0 * exp(-b n)
    double r0 = 0.0;
    std::int64_t n_min = 0;
    std::int64_t n_max = 0;
    double residual = 0.0;   // RMS residual of log R against n
    std::size_t knots_used = 0;
};

inline CumulativeDistribution build_cumulative(const IntervalSet& intervals) {
    if (intervals.empty()) throw InsufficientDataError("empty interval set");

    std::vector<std::int64_t> sorted = intervals.lengths;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 1) throw DomainError("interval lengths must be >= 1");

    CumulativeDistribution dist;
    dist.total = std::int64_t(sorted.size());
    dist.longest = sorted.back();
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        // R(v) = count of lengths >= v = elements from position i to the end
        dist.knots.push_back({sorted[i], std::int64_t(sorted.size() - i)});
        i = j;
    }
    return dist;
}

// Raw step-function value R(n) for integer n >= 1.
inline std::int64_t raw_count(const CumulativeDistribution& dist, std::int64_t n) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (dist.empty() || n > dist.longest) return 0;
    auto it = std::lower_bound(dist.knots.begin(), dist.knots.end(), n,
                               [](const CumulativeDistribution::Knot& k, std::int64_t v) {
                                   return k.n < v;
                               });
    return it->count;
}

// Piecewise-linear smoothing of R through its knots. Exact at knots; constant
// left of the first knot (where the raw distribution is flat at `total`).
inline double interpolate(const CumulativeDistribution& dist, double n) {
    if (dist.empty()) throw InsufficientDataError("empty distribution");
    if (!(n >= 1.0) || !(n <= double(dist.longest)))
        throw DomainError("interpolation point " + std::to_string(n) + " outside [1, " +
                          std::to_string(dist.longest) + "]");

    const auto& knots = dist.knots;
    if (n <= double(knots.front().n)) return double(knots.front().count);

    auto hi = std::lower_bound(knots.begin(), knots.end(), n,
                               [](const CumulativeDistribution::Knot& k, double v) {
                                   return double(k.n) < v;
                               });
    if (hi != knots.end() && double(hi->n) == n) return double(hi->count);
    auto lo = hi - 1;
    const double na = double(lo->n), nb = double(hi->n);
    const double ra = double(lo->count), rb = double(hi->count);
    return (ra * (nb - n) + rb * (n - na)) / (nb - na);
}

namespace detail {

struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    std::size_t points = 0;
};

inline OlsFit ols(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    OlsFit fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / double(n));
    return fit;
}

template <typename Transform>
inline detail::OlsFit fit_knots(const CumulativeDistribution& dist, std::int64_t n_min,
                                std::int64_t n_max, Transform&& tx) {
    if (n_min < 1 || n_min >= n_max) throw DomainError("invalid fit range");
    std::vector<double> xs, ys;
    for (const auto& k : dist.knots) {
        if (k.n < n_min || k.n > n_max) continue;
        xs.push_back(tx(double(k.n)));
        ys.push_back(std::log(double(k.count)));
    }
    if (xs.size() < 3)
        throw InsufficientDataError("need at least 3 knots in [" + std::to_string(n_min) + ", " +
                                    std::to_string(n_max) + "], found " +
                                    std::to_string(xs.size()));
    return ols(xs, ys);
}

}  // namespace detail

// Least squares of log R against log n over the knots inside [n_min, n_max].
// Fitting change points only keeps long plateaus from over-weighting the
// regression.
inline ScalingFit fit_alpha(const CumulativeDistribution& dist, std::int64_t n_min,
                            std::int64_t n_max) {
    auto f = detail::fit_knots(dist, n_min, n_max, [](double n) { return std::log(n); });
    ScalingFit fit;
    fit.alpha = -f.slope;
    fit.r0 = std::exp(f.intercept);
    fit.n_min = n_min;
    fit.n_max = n_max;
    fit.residual = f.rms_residual;
    fit.knots_used = f.points;
    return fit;
}

// Least squares of log R against n (exponential decay model), same knot rule.
inline ExponentialFit fit_exponential(const CumulativeDistribution& dist, std::int64_t n_min,
                                      std::int64_t n_max) {
    auto f = detail::fit_knots(dist, n_min, n_max, [](double n) { return n; });
    ExponentialFit fit;
    fit.rate = -f.slope;
    fit.r0 = std::exp(f.intercept);
    fit.n_min = n_min;
    fit.n_max = n_max;
    fit.residual = f.rms_residual;
    fit.knots_used = f.points;
    return fit;
}

}  // namespace lvp
