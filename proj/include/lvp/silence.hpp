#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "lvp/distribution.hpp"
#include "lvp/errors.hpp"

namespace lvp {

// Sampled silence-breaking curve: p(n) is the probability that a
// low-variability period of current length n ends within the next unit of
// time. Samples lie on an integer grid that is exhaustive up to n = 100 and
// geometric (1% steps) beyond, matching the log axis the curve is read on.
//
// `cutoff` is floor(cutoff_fraction * N). `stat_cutoff` marks the end of the
// statistically supported range: the largest sampled n at which at least
// max(10, sqrt(total)/2) intervals remain. Beyond it the raw counts are so
// small that p(n) swings over orders of magnitude.
struct SilenceCurve {
    struct Sample {
        std::int64_t n = 0;
        double p = 0.0;
        double pn = 0.0;
    };
    std::vector<Sample> samples;
    std::int64_t cutoff = 0;
    std::int64_t stat_cutoff = 0;
    std::optional<double> alpha_ref;  // reference exponent, if known
};

// p(n) = [R~(n) - R~(n+1)] / R~(n) on the smoothed distribution, with
// R~(N+1) taken as 0 (so p(N) = 1).
inline double silence_probability(const CumulativeDistribution& dist, std::int64_t n) {
    if (dist.empty()) throw InsufficientDataError("empty distribution");
    if (n < 1 || n > dist.longest)
        throw DomainError("n = " + std::to_string(n) + " outside [1, " +
                          std::to_string(dist.longest) + "]");
    const double rn = interpolate(dist, double(n));
    const double rn1 = (n == dist.longest) ? 0.0 : interpolate(dist, double(n + 1));
    const double p = (rn - rn1) / rn;
    return std::clamp(p, 0.0, 1.0);
}

// Silence-breaking probability implied by an exact power law R(n) = R0 n^-a:
// p(n) = 1 - (n / (n+1))^a. Analytic reference for validating the pipeline;
// p(n) * n approaches a from below as n grows.
inline double power_law_silence_probability(double n, double alpha) {
    if (!(n >= 1.0)) throw DomainError("n must be >= 1");
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    return -std::expm1(alpha * std::log(n / (n + 1.0)));
}

namespace detail {

inline std::int64_t next_curve_sample(std::int64_t n) {
    const auto stepped = std::int64_t(std::ceil(double(n) * 1.01));
    return std::max(n + 1, stepped);
}

inline std::int64_t supported_cutoff(const CumulativeDistribution& dist) {
    const auto floor_count =
        std::max<std::int64_t>(10, std::int64_t(std::sqrt(double(dist.total)) / 2.0));
    std::int64_t best = 0;
    for (const auto& k : dist.knots) {
        if (k.count >= floor_count) best = k.n;
    }
    return best;
}

}  // namespace detail

// Samples p(n) and p(n)*n for n in [1, floor(cutoff_fraction * N)].
inline SilenceCurve silence_curve(const CumulativeDistribution& dist,
                                  double cutoff_fraction = 0.25) {
    if (dist.empty()) throw InsufficientDataError("empty distribution");
    if (!(cutoff_fraction > 0.0) || !(cutoff_fraction <= 1.0))
        throw DomainError("cutoff_fraction must be in (0, 1]");

    SilenceCurve curve;
    curve.cutoff = std::int64_t(std::floor(cutoff_fraction * double(dist.longest)));
    if (curve.cutoff < 1)
        throw InsufficientDataError("cutoff fraction " + std::to_string(cutoff_fraction) +
                                    " of N = " + std::to_string(dist.longest) +
                                    " yields an empty range");
    curve.stat_cutoff = std::min(curve.cutoff, detail::supported_cutoff(dist));

    for (std::int64_t n = 1; n <= curve.cutoff; n = detail::next_curve_sample(n)) {
        const double p = silence_probability(dist, n);
        curve.samples.push_back({n, p, p * double(n)});
    }
    return curve;
}

// Mean of p(n)*n over the samples with n in [lower, stat_cutoff]. The average
// deliberately stops at the statistically supported cutoff: past it the curve
// is dominated by single-interval noise rather than the asymptotic plateau.
inline double plateau_estimate(const SilenceCurve& curve, std::int64_t lower = 20) {
    if (lower < 1) throw DomainError("lower bound must be >= 1");
    double sum = 0.0;
    std::int64_t count = 0;
    for (const auto& s : curve.samples) {
        if (s.n < lower || s.n > curve.stat_cutoff) continue;
        sum += s.pn;
        ++count;
    }
    if (count < 5)
        throw InsufficientDataError("plateau estimate needs >= 5 samples in [" +
                                    std::to_string(lower) + ", " +
                                    std::to_string(curve.stat_cutoff) + "], found " +
                                    std::to_string(count));
    return sum / double(count);
}

}  // namespace lvp
