#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "lvp/silence.hpp"
#include "lvp/surrogate.hpp"

using namespace lvp;

namespace {

IntervalSet set_of(std::vector<std::int64_t> lengths) {
    return IntervalSet{std::move(lengths), "test"};
}

double sample_variance(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / double(v.size());
}

}  // namespace

TEST_CASE("silence_probability on worked examples") {
    auto dist = build_cumulative(set_of({1, 2, 2, 5}));

    SECTION("p(1) at adjacent knots is the raw ratio") {
        REQUIRE(silence_probability(dist, 1) == 0.25);
    }
    SECTION("p(2) uses the interpolated R~(3)") {
        // R~(3) = (3*2 + 1*1)/3 = 7/3, p(2) = (3 - 7/3)/3
        REQUIRE_THAT(silence_probability(dist, 2),
                     Catch::Matchers::WithinAbs(2.0 / 9.0, 1e-15));
    }
    SECTION("silence always breaks at the longest length") {
        REQUIRE(silence_probability(dist, 5) == 1.0);
    }
    SECTION("all intervals of length one break immediately") {
        auto ones = build_cumulative(set_of({1, 1, 1}));
        REQUIRE(silence_probability(ones, 1) == 1.0);
    }
    SECTION("domain errors") {
        REQUIRE_THROWS_AS(silence_probability(dist, 0), DomainError);
        REQUIRE_THROWS_AS(silence_probability(dist, 6), DomainError);
    }
}

TEST_CASE("silence_probability matches the brute-force oracle at knots") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        auto set = testutil::random_interval_set(rng);
        testutil::CountingOracle oracle{set.lengths};
        auto dist = build_cumulative(set);
        for (const auto& knot : dist.knots)
            REQUIRE(silence_probability(dist, knot.n) == oracle.breaking_probability(knot.n));
    }
}

TEST_CASE("p(n) stays within [0, 1] everywhere") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        auto dist = build_cumulative(testutil::random_interval_set(rng));
        for (std::int64_t n = 1; n <= dist.longest; ++n) {
            const double p = silence_probability(dist, n);
            REQUIRE(p >= 0.0);
            REQUIRE(p <= 1.0);
        }
    }
}

TEST_CASE("the 1/n law fails at small n and holds at large n on an exact power law") {
    // exact R(n) = R0 / n: p(n) = 1 - n/(n+1) = 1/(n+1)
    CHECK(std::fabs(1.0 * power_law_silence_probability(1, 1.0) - 1.0) > 0.1);
    CHECK(std::fabs(100.0 * power_law_silence_probability(100, 1.0) - 1.0) < 0.02);

    for (std::int64_t n : {20, 50, 100, 1000, 250000})
        CHECK(std::fabs(double(n) * power_law_silence_probability(double(n), 1.0) - 1.0) <= 0.1);

    REQUIRE_THROWS_AS(power_law_silence_probability(0.5, 1.0), DomainError);
    REQUIRE_THROWS_AS(power_law_silence_probability(2.0, 0.0), DomainError);
}

TEST_CASE("silence_curve sampling and cutoffs") {
    SECTION("N = 949 with the default fraction cuts at 237") {
        auto dist = build_cumulative(set_of({949}));
        auto curve = silence_curve(dist);
        CHECK(curve.cutoff == 237);
    }
    SECTION("small N with fraction 1 samples every integer") {
        auto dist = build_cumulative(set_of({1, 2, 3, 4}));
        auto curve = silence_curve(dist, 1.0);
        REQUIRE(curve.samples.size() == 4);
        for (std::int64_t n = 1; n <= 4; ++n) CHECK(curve.samples[std::size_t(n - 1)].n == n);
    }
    SECTION("samples are dense up to 100 and geometric beyond") {
        SurrogateParams params{100000, 0.5, 9};
        auto dist = build_cumulative(generate_power_law_intervals(params));
        auto curve = silence_curve(dist);
        REQUIRE(curve.samples.size() > 100);
        std::int64_t prev = 0;
        for (const auto& s : curve.samples) {
            if (prev > 0) {
                if (prev < 100) REQUIRE(s.n == prev + 1);
                REQUIRE(s.n > prev);
                REQUIRE(s.n <= std::max(prev + 1, std::int64_t(std::ceil(double(prev) * 1.01))));
            }
            REQUIRE(s.pn == s.p * double(s.n));
            prev = s.n;
        }
        REQUIRE(curve.samples.back().n <= curve.cutoff);
        REQUIRE(curve.stat_cutoff <= curve.cutoff);
    }
    SECTION("degenerate and invalid inputs") {
        auto dist = build_cumulative(set_of({1}));
        REQUIRE_THROWS_AS(silence_curve(dist, 0.25), InsufficientDataError);
        REQUIRE_THROWS_AS(silence_curve(dist, 0.0), DomainError);
        REQUIRE_THROWS_AS(silence_curve(dist, 1.5), DomainError);
    }
}

TEST_CASE("plateau_estimate") {
    SECTION("constant curve returns the constant exactly") {
        SilenceCurve curve;
        curve.cutoff = 40;
        curve.stat_cutoff = 40;
        for (std::int64_t n = 1; n <= 40; ++n) curve.samples.push_back({n, 0.5, 0.5});
        REQUIRE(plateau_estimate(curve, 20) == 0.5);
    }
    SECTION("too few supported samples is an error") {
        SilenceCurve curve;
        curve.cutoff = 6;
        curve.stat_cutoff = 6;
        for (std::int64_t n = 1; n <= 6; ++n) curve.samples.push_back({n, 0.5, 0.5});
        REQUIRE_THROWS_AS(plateau_estimate(curve, 20), InsufficientDataError);
        REQUIRE_THROWS_AS(plateau_estimate(curve, 0), DomainError);
    }
    SECTION("recovers the generating exponent from long surrogates") {
        for (std::uint64_t seed : {1, 2, 3}) {
            auto dist = build_cumulative(generate_power_law_intervals({1000000, 0.5, seed}));
            auto curve = silence_curve(dist);
            const double plateau = plateau_estimate(curve, 20);
            INFO("seed " << seed << " plateau " << plateau);
            CHECK(plateau >= 0.45);
            CHECK(plateau <= 0.55);
        }
    }
}

TEST_CASE("plateau estimates agree across lengths and fluctuations grow toward the tail") {
    const double alpha = 0.81;
    const std::vector<std::int64_t> lengths = {1000, 10000, 100000};
    std::vector<double> means, errors;

    for (std::int64_t count : lengths) {
        std::vector<double> plateaus;
        double var_hi_sum = 0.0, var_lo_sum = 0.0;
        int var_cells = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto dist = build_cumulative(generate_power_law_intervals({count, alpha, seed}));
            auto curve = silence_curve(dist);
            plateaus.push_back(plateau_estimate(curve, 20));

            // variance of p(n)*n in the lower vs upper half of the
            // statistically supported range
            const std::int64_t mid = curve.stat_cutoff / 2;
            std::vector<double> lo, hi;
            for (const auto& s : curve.samples) {
                if (s.n < 20 || s.n > curve.stat_cutoff) continue;
                (s.n < mid ? lo : hi).push_back(s.pn);
            }
            if (lo.size() >= 2 && hi.size() >= 2) {
                var_lo_sum += sample_variance(lo);
                var_hi_sum += sample_variance(hi);
                ++var_cells;
            }
        }
        REQUIRE(var_cells >= 15);
        INFO("count " << count << ": mean var hi " << var_hi_sum / var_cells << " vs lo "
                      << var_lo_sum / var_cells);
        CHECK(var_hi_sum > var_lo_sum);

        double mean = 0.0;
        for (double p : plateaus) mean += p;
        mean /= double(plateaus.size());
        double ss = 0.0;
        for (double p : plateaus) ss += (p - mean) * (p - mean);
        means.push_back(mean);
        errors.push_back(std::sqrt(ss / double(plateaus.size() - 1) / double(plateaus.size())));
    }

    for (std::size_t i = 0; i < means.size(); ++i)
        for (std::size_t j = i + 1; j < means.size(); ++j) {
            const double gap = std::fabs(means[i] - means[j]);
            const double combined = std::hypot(errors[i], errors[j]);
            INFO("L=" << lengths[i] << " vs L=" << lengths[j] << ": gap " << gap
                      << ", combined se " << combined);
            CHECK(gap <= 3.0 * combined);
        }
}
