#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lvp/errors.hpp"
#include "lvp/ingest.hpp"
#include "lvp/variability.hpp"

namespace lvp {

struct SurrogateParams {
    std::int64_t count = 0;    // L, number of intervals
    double alpha = 1.0;        // target scaling exponent
    std::uint64_t seed = 1;
};

// Generator identity recorded in output metadata so runs stay auditable.
inline constexpr std::string_view kRngIdentity =
    "mt19937_64; uniforms ((x>>11)+1)*2^-53 in (0,1]; normals via Box-Muller";

namespace detail {

// Uniform draw on (0, 1] with 53-bit resolution, independent of any
// library distribution implementation so streams reproduce bit-exactly.
inline double unit_open_closed(std::mt19937_64& engine) {
    return double((engine() >> 11) + 1) * 0x1.0p-53;
}

inline std::pair<double, double> normal_pair(std::mt19937_64& engine) {
    const double u1 = unit_open_closed(engine);
    const double u2 = unit_open_closed(engine);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace detail

// Integer power-law variate: floor(u^(-1/alpha)) for u in (0, 1], so that
// P(tau >= n) = n^-alpha exactly at every integer n >= 1.
inline std::int64_t power_law_length(double u, double alpha) {
    if (!(u > 0.0) || !(u <= 1.0)) throw DomainError("u must be in (0, 1]");
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const double x = std::pow(u, -1.0 / alpha);
    if (!(x < 9.0e18)) return std::int64_t(9000000000000000000LL);
    return std::int64_t(x);
}

// Draws `count` independent power-law distributed interval lengths.
// Identical parameters and seed reproduce the identical multiset.
inline IntervalSet generate_power_law_intervals(const SurrogateParams& params) {
    if (params.count < 1) throw DomainError("surrogate count must be >= 1");
    if (!(params.alpha > 0.0)) throw DomainError("surrogate alpha must be positive");

    std::mt19937_64 engine(params.seed);
    IntervalSet intervals;
    intervals.lengths.reserve(std::size_t(params.count));
    for (std::int64_t i = 0; i < params.count; ++i)
        intervals.lengths.push_back(power_law_length(detail::unit_open_closed(engine), params.alpha));
    intervals.source = "surrogate count=" + std::to_string(params.count) +
                       " alpha=" + std::to_string(params.alpha) +
                       " seed=" + std::to_string(params.seed);
    return intervals;
}

// Synthetic daily price series whose log-returns are independent standard
// Gaussian draws. Dates are consecutive calendar days acting as trading-day
// indices. The log-price path is re-centred about its midrange before
// exponentiating, which leaves every return untouched but keeps exp() in
// range for long series.
inline PriceSeries generate_gaussian_control(std::int64_t length, std::uint64_t seed) {
    if (length < 2) throw DomainError("need at least 2 points");

    std::mt19937_64 engine(seed);
    std::vector<double> x(static_cast<std::size_t>(length));
    x[0] = 0.0;
    for (std::int64_t t = 1; t < length; t += 2) {
        auto [z0, z1] = detail::normal_pair(engine);
        x[std::size_t(t)] = x[std::size_t(t - 1)] + z0;
        if (t + 1 < length) x[std::size_t(t + 1)] = x[std::size_t(t)] + z1;
    }

    double lo = x[0], hi = x[0];
    for (double v : x) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double centre = (lo + hi) / 2.0;
    if (hi - centre > 700.0)
        throw Error("gaussian control path out of floating-point range; pick another seed");

    PriceSeries series;
    series.symbol = "gaussian-control-" + std::to_string(seed);
    series.points.reserve(x.size());
    const auto start = std::chrono::sys_days(std::chrono::year_month_day(
        std::chrono::year(2000), std::chrono::month(1), std::chrono::day(3)));
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto date = std::chrono::year_month_day(start + std::chrono::days(std::int64_t(i)));
        series.points.push_back({date, std::exp(x[i] - centre)});
    }
    return series;
}

}  // namespace lvp
