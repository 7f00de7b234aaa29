// Regenerates the bundled sample dataset (data/sample.csv) together with its
// manifest. The sample is a seeded geometric random walk: 1000 daily closes
// starting at 100 with 1% Gaussian log-returns.
//
// Usage: make_sample <output-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <vector>

#include <json.hpp>

#include "lvp/ingest.hpp"
#include "lvp/surrogate.hpp"
#include "lvp/tsv.hpp"
#include "lvp/variability.hpp"

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr int kRows = 1000;
constexpr double kStartClose = 100.0;
constexpr double kDailyVol = 0.01;

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_sample <output-dir>\n";
        return 1;
    }
    const std::filesystem::path out_dir = argv[1];
    std::filesystem::create_directories(out_dir);

    std::mt19937_64 engine(kSeed);
    std::vector<double> log_returns;
    log_returns.reserve(kRows - 1);
    while (log_returns.size() < kRows - 1) {
        auto [z0, z1] = lvp::detail::normal_pair(engine);
        log_returns.push_back(kDailyVol * z0);
        if (log_returns.size() < kRows - 1) log_returns.push_back(kDailyVol * z1);
    }

    std::vector<double> closes;
    closes.reserve(kRows);
    closes.push_back(kStartClose);
    for (double r : log_returns) closes.push_back(closes.back() * std::exp(r));

    const auto start = std::chrono::sys_days(std::chrono::year_month_day(
        std::chrono::year(2000), std::chrono::month(1), std::chrono::day(3)));

    std::ofstream csv(out_dir / "sample.csv", std::ios::binary);
    csv << "date,close\n";
    for (int i = 0; i < kRows; ++i) {
        const auto date = std::chrono::year_month_day(start + std::chrono::days(i));
        csv << lvp::format_iso_date(date) << "," << lvp::format_number(closes[std::size_t(i)])
            << "\n";
    }
    csv.close();

    double min_close = closes.front(), max_close = closes.front();
    for (double c : closes) {
        min_close = std::min(min_close, c);
        max_close = std::max(max_close, c);
    }
    double mean = 0.0;
    for (double r : log_returns) mean += r;
    mean /= double(log_returns.size());
    double ss = 0.0;
    for (double r : log_returns) ss += (r - mean) * (r - mean);
    const double stddev = std::sqrt(ss / double(log_returns.size() - 1));

    nlohmann::json manifest{
        {"seed", kSeed},
        {"rng", std::string(lvp::kRngIdentity)},
        {"rows", kRows},
        {"first_date", lvp::format_iso_date(std::chrono::year_month_day(start))},
        {"last_date",
         lvp::format_iso_date(std::chrono::year_month_day(start + std::chrono::days(kRows - 1)))},
        {"start_close", kStartClose},
        {"daily_vol", kDailyVol},
        {"log_return_mean", mean},
        {"log_return_stddev", stddev},
        {"min_close", min_close},
        {"max_close", max_close},
    };
    std::ofstream mf(out_dir / "sample_manifest.json", std::ios::binary);
    mf << manifest.dump(2) << "\n";

    std::cout << "wrote " << (out_dir / "sample.csv").string() << " and manifest\n";
    return 0;
}
