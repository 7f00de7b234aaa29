#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "lvp/distribution.hpp"
#include "lvp/ingest.hpp"
#include "lvp/silence.hpp"
#include "lvp/surrogate.hpp"
#include "lvp/variability.hpp"

using namespace lvp;

TEST_CASE("power_law_length inverse-transform values") {
    CHECK(power_law_length(0.25, 0.5) == 16);  // 0.25^-2
    CHECK(power_law_length(0.5, 1.0) == 2);
    for (double alpha : {0.3, 1.0, 2.0}) CHECK(power_law_length(1.0, alpha) == 1);
    CHECK(power_law_length(1e-300, 0.1) == 9000000000000000000LL);  // clamped
    REQUIRE_THROWS_AS(power_law_length(0.0, 1.0), DomainError);
    REQUIRE_THROWS_AS(power_law_length(1.5, 1.0), DomainError);
    REQUIRE_THROWS_AS(power_law_length(0.5, 0.0), DomainError);
}

TEST_CASE("generate_power_law_intervals is seed-deterministic") {
    const SurrogateParams params{5000, 0.81, 12345};
    auto a = generate_power_law_intervals(params);
    auto b = generate_power_law_intervals(params);
    REQUIRE(a.lengths == b.lengths);
    CHECK(a.source.find("seed=12345") != std::string::npos);

    int distinct_pairs = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto x = generate_power_law_intervals({1000, 1.0, seed});
        auto y = generate_power_law_intervals({1000, 1.0, seed + 1000});
        if (x.lengths != y.lengths) ++distinct_pairs;
    }
    REQUIRE(distinct_pairs == 10);
}

TEST_CASE("generated lengths are positive and parameter validation holds") {
    auto set = generate_power_law_intervals({100000, 0.3, 77});
    REQUIRE(set.size() == 100000);
    CHECK(*std::min_element(set.lengths.begin(), set.lengths.end()) >= 1);
    REQUIRE_THROWS_AS(generate_power_law_intervals({0, 1.0, 1}), DomainError);
    REQUIRE_THROWS_AS(generate_power_law_intervals({10, -1.0, 1}), DomainError);
}

TEST_CASE("sorting the multiset does not change the distribution") {
    auto set = generate_power_law_intervals({20000, 0.7, 3});
    IntervalSet sorted = set;
    std::sort(sorted.lengths.begin(), sorted.lengths.end());

    auto a = build_cumulative(set);
    auto b = build_cumulative(sorted);
    REQUIRE(a.knots.size() == b.knots.size());
    for (std::size_t i = 0; i < a.knots.size(); ++i) {
        REQUIRE(a.knots[i].n == b.knots[i].n);
        REQUIRE(a.knots[i].count == b.knots[i].count);
    }
}

TEST_CASE("tail frequency matches the exact discrete law") {
    // floor discretization: P(tau >= 10) = 10^-1 exactly at alpha = 1
    auto set = generate_power_law_intervals({1000000, 1.0, 2024});
    std::int64_t tail = 0;
    for (auto tau : set.lengths)
        if (tau >= 10) ++tail;
    const double fraction = double(tail) / 1e6;
    // binomial standard error sqrt(0.1*0.9/1e6) ~ 3e-4; allow 3 of them
    CHECK(std::fabs(fraction - 0.1) <= 9e-4);
}

TEST_CASE("scaling fit recovers the generating exponent") {
    auto dist = build_cumulative(generate_power_law_intervals({1000000, 1.0, 5}));
    auto fit = fit_alpha(dist, 2, dist.longest / 4);
    CHECK(fit.alpha >= 0.95);
    CHECK(fit.alpha <= 1.05);
}

TEST_CASE("gaussian control series") {
    SECTION("deterministic and well-formed at small length") {
        auto a = generate_gaussian_control(10, 99);
        auto b = generate_gaussian_control(10, 99);
        REQUIRE(a.size() == 10);
        for (std::size_t i = 0; i < a.size(); ++i) {
            REQUIRE(a.points[i].close == b.points[i].close);
            REQUIRE(a.points[i].close > 0.0);
            if (i > 0)
                REQUIRE(std::chrono::sys_days(a.points[i].date) ==
                        std::chrono::sys_days(a.points[i - 1].date) + std::chrono::days(1));
        }
        REQUIRE_THROWS_AS(generate_gaussian_control(1, 1), DomainError);
    }
    SECTION("log-returns are standard normal at scale") {
        auto series = generate_gaussian_control(100001, 7);
        auto x = to_log_prices(series);
        std::vector<double> r;
        for (std::size_t i = 1; i < x.size(); ++i) r.push_back(x[i] - x[i - 1]);

        double mean = 0.0;
        for (double v : r) mean += v;
        mean /= double(r.size());
        double ss = 0.0;
        for (double v : r) ss += (v - mean) * (v - mean);
        const double stddev = std::sqrt(ss / double(r.size() - 1));

        CHECK(std::fabs(mean) <= 0.02);
        CHECK(stddev >= 0.99);
        CHECK(stddev <= 1.01);
    }
    SECTION("run lengths decay exponentially rather than as a power law") {
        auto series = generate_gaussian_control(100000, 11);
        auto signal = compute_variability(to_log_prices(series), 1);
        auto set = extract_intervals(signal, 2.0);
        REQUIRE_FALSE(set.empty());
        auto dist = build_cumulative(set);
        auto exponential = fit_exponential(dist, 2, dist.longest / 4);
        auto power = fit_alpha(dist, 2, dist.longest / 4);
        CHECK(exponential.residual < power.residual);
    }
}
