#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lvp/distribution.hpp"
#include "lvp/variability.hpp"

namespace testutil {

// Scratch directory removed when the object goes out of scope.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("lvp-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                        const std::string& content) {
    const auto p = dir / name;
    std::ofstream os(p, std::ios::binary);
    os << content;
    return p;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// key -> value rows of a summary.tsv (ignores '#' lines).
inline std::map<std::string, std::string> read_summary(const std::filesystem::path& p) {
    std::map<std::string, std::string> rows;
    std::ifstream is(p);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab != std::string::npos) rows[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return rows;
}

// Independent brute-force oracle for the cumulative distribution and the
// smoothed silence-breaking probability. Works straight off the multiset,
// no knot representation.
struct CountingOracle {
    std::vector<std::int64_t> lengths;

    std::int64_t raw(std::int64_t n) const {
        std::int64_t c = 0;
        for (auto tau : lengths)
            if (tau >= n) ++c;
        return c;
    }

    std::int64_t longest() const {
        std::int64_t m = 0;
        for (auto tau : lengths) m = std::max(m, tau);
        return m;
    }

    // Change points: every n with at least one interval of exactly that length.
    std::vector<std::int64_t> change_points() const {
        std::vector<std::int64_t> points;
        for (std::int64_t n = 1; n <= longest(); ++n)
            if (raw(n) != raw(n + 1)) points.push_back(n);
        return points;
    }

    double smoothed(double n) const {
        const auto points = change_points();
        if (n <= double(points.front())) return double(raw(1));
        for (std::size_t i = 0; i + 1 < points.size(); ++i) {
            const double na = double(points[i]), nb = double(points[i + 1]);
            if (n <= nb) {
                if (n == na) return double(raw(points[i]));
                const double ra = double(raw(points[i])), rb = double(raw(points[i + 1]));
                return (ra * (nb - n) + rb * (n - na)) / (nb - na);
            }
        }
        return double(raw(points.back()));
    }

    double breaking_probability(std::int64_t n) const {
        const double rn = smoothed(double(n));
        const double rn1 = (n == longest()) ? 0.0 : smoothed(double(n + 1));
        return (rn - rn1) / rn;
    }
};

inline lvp::IntervalSet random_interval_set(std::mt19937& rng, int max_count = 50,
                                            int max_length = 20) {
    std::uniform_int_distribution<int> count_dist(1, max_count);
    std::uniform_int_distribution<std::int64_t> length_dist(1, max_length);
    lvp::IntervalSet set;
    const int count = count_dist(rng);
    for (int i = 0; i < count; ++i) set.lengths.push_back(length_dist(rng));
    set.source = "test";
    return set;
}

}  // namespace testutil
