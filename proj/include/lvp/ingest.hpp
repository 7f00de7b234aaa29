#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lvp/errors.hpp"

namespace lvp {

struct PricePoint {
    std::chrono::year_month_day date{};
    double close = 0.0;
};

// Ordered daily close series. Invariants (enforced by load_price_csv):
// dates strictly increasing, closes positive, at least two points.
struct PriceSeries {
    std::string symbol;
    std::vector<PricePoint> points;

    std::size_t size() const { return points.size(); }
};

// Header names of the two columns consumed from a CSV file.
struct ColumnConfig {
    std::string date_column = "date";
    std::string close_column = "close";
};

inline std::optional<std::chrono::year_month_day> parse_iso_date(std::string_view text) {
    // Strict YYYY-MM-DD.
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto digits = [](std::string_view s, int& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && p == s.data() + s.size();
    };
    int y = 0, m = 0, d = 0;
    if (!digits(text.substr(0, 4), y) || !digits(text.substr(5, 2), m) ||
        !digits(text.substr(8, 2), d))
        return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) return std::nullopt;
    return ymd;
}

inline std::string format_iso_date(std::chrono::year_month_day ymd) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s.remove_prefix(1);
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

inline bool parse_close(std::string_view s, double& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size() && std::isfinite(out);
}

}  // namespace detail

// Loads a daily close series from a comma-separated file with a header row.
// Rows must be in strictly ascending date order; every row is validated and
// any defect is reported with its data row number (1 = first row after the
// header). Nothing is returned on failure: parsing is all-or-nothing.
inline PriceSeries load_price_csv(const std::filesystem::path& path,
                                  const ColumnConfig& columns = {},
                                  std::string_view symbol = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());

    const std::string where = path.filename().string();
    std::string line;
    if (!std::getline(in, line)) throw ParseError(where + ": empty file, header row required");
    // Drop a UTF-8 BOM if present.
    if (line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF')
        line.erase(0, 3);

    auto header = detail::split_csv_line(line);
    std::ptrdiff_t date_idx = -1, close_idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == columns.date_column) {
            if (date_idx >= 0)
                throw ParseError(where + ": duplicate column '" + columns.date_column + "'");
            date_idx = std::ptrdiff_t(i);
        }
        if (header[i] == columns.close_column) {
            if (close_idx >= 0)
                throw ParseError(where + ": duplicate column '" + columns.close_column + "'");
            close_idx = std::ptrdiff_t(i);
        }
    }
    if (date_idx < 0) throw ParseError(where + ": missing column '" + columns.date_column + "'");
    if (close_idx < 0) throw ParseError(where + ": missing column '" + columns.close_column + "'");

    PriceSeries series;
    series.symbol = symbol.empty() ? path.stem().string() : std::string(symbol);

    long row = 0;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        ++row;
        const std::string at = where + ": row " + std::to_string(row);
        auto fields = detail::split_csv_line(line);
        if (fields.size() <= std::size_t(std::max(date_idx, close_idx)))
            throw ParseError(at + ": expected at least " +
                             std::to_string(std::max(date_idx, close_idx) + 1) + " fields, got " +
                             std::to_string(fields.size()));

        auto date = parse_iso_date(fields[std::size_t(date_idx)]);
        if (!date)
            throw ParseError(at + ": bad date '" + std::string(fields[std::size_t(date_idx)]) +
                             "' (expected YYYY-MM-DD)");
        if (!series.points.empty()) {
            auto prev = std::chrono::sys_days(series.points.back().date);
            if (std::chrono::sys_days(*date) == prev)
                throw ParseError(at + ": duplicate date " + format_iso_date(*date));
            if (std::chrono::sys_days(*date) < prev)
                throw ParseError(at + ": date " + format_iso_date(*date) +
                                 " not in ascending order");
        }

        double close = 0.0;
        if (!detail::parse_close(fields[std::size_t(close_idx)], close))
            throw ParseError(at + ": close '" + std::string(fields[std::size_t(close_idx)]) +
                             "' is not a number");
        if (close <= 0.0)
            throw ParseError(at + ": close must be positive (got " +
                             std::string(fields[std::size_t(close_idx)]) + ")");

        series.points.push_back({*date, close});
    }

    if (series.points.size() < 2)
        throw ParseError(where + ": series too short, need at least 2 rows, got " +
                         std::to_string(series.points.size()));
    return series;
}

// Natural-log prices, aligned with the input points.
inline std::vector<double> to_log_prices(const PriceSeries& series) {
    std::vector<double> x;
    x.reserve(series.points.size());
    for (const auto& p : series.points) {
        if (!(p.close > 0.0)) throw DomainError("non-positive close in price series");
        x.push_back(std::log(p.close));
    }
    return x;
}

}  // namespace lvp
