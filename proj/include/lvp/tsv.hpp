#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lvp/analysis.hpp"

namespace lvp {

// All emitted tables share one dialect: tab-separated columns, '.' decimal
// separator, '\n' line endings, '#'-prefixed metadata header lines.

inline std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

// Ordered key/value pairs for metadata headers and summary rows.
class Records {
public:
    void add(std::string key, std::string value) {
        items_.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
    void add(std::string key, double value) { add(std::move(key), format_number(value)); }
    void add(std::string key, std::int64_t value) { add(std::move(key), std::to_string(value)); }
    void add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }
    void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }

    const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

inline void write_metadata(std::ostream& os, const Records& meta) {
    for (const auto& [key, value] : meta.items()) os << "# " << key << " = " << value << "\n";
}

inline void write_knots_tsv(std::ostream& os, const CumulativeDistribution& dist,
                            const Records& meta) {
    write_metadata(os, meta);
    os << "# columns: n R\n";
    for (const auto& knot : dist.knots) os << knot.n << "\t" << knot.count << "\n";
}

inline void write_curve_tsv(std::ostream& os, const SilenceCurve* curve, const Records& meta) {
    write_metadata(os, meta);
    if (curve) {
        os << "# cutoff = " << curve->cutoff << "\n";
        os << "# stat_cutoff = " << curve->stat_cutoff << "\n";
        if (curve->alpha_ref) os << "# alpha_ref = " << format_number(*curve->alpha_ref) << "\n";
    }
    os << "# columns: n p pn\n";
    if (!curve) return;
    for (const auto& s : curve->samples)
        os << s.n << "\t" << format_number(s.p) << "\t" << format_number(s.pn) << "\n";
}

inline void write_intervals_tsv(std::ostream& os, const IntervalSet& intervals,
                                const Records& meta) {
    write_metadata(os, meta);
    os << "# columns: tau\n";
    for (auto tau : intervals.lengths) os << tau << "\n";
}

// Summary: metadata header, key/value rows, then one machine-readable
// `# summary:` line holding the same pairs as key=value for scripting.
inline void write_summary_tsv(std::ostream& os, const Records& meta, const Records& rows) {
    write_metadata(os, meta);
    os << "# columns: key value\n";
    for (const auto& [key, value] : rows.items()) os << key << "\t" << value << "\n";
    os << "# summary:";
    for (const auto& [key, value] : rows.items()) os << " " << key << "=" << value;
    os << "\n";
}

struct SweepRow {
    double delta_sigma = 0.0;
    std::int64_t r1 = 0;
    std::int64_t r10 = 0;
    std::int64_t longest = 0;
    std::optional<double> alpha;
    std::string status = "ok";
};

inline void write_sweep_tsv(std::ostream& os, const Records& meta,
                            const std::vector<SweepRow>& rows) {
    write_metadata(os, meta);
    os << "# columns: delta_sigma R1 R10 N alpha status\n";
    for (const auto& row : rows) {
        std::string status = row.status;
        for (char& c : status)
            if (c == '\t' || c == '\n') c = ' ';
        os << format_number(row.delta_sigma) << "\t" << row.r1 << "\t" << row.r10 << "\t"
           << row.longest << "\t" << format_number(row.alpha ? *row.alpha : NAN) << "\t"
           << status << "\n";
    }
}

// Shared summary rows for a single analysis pass.
inline Records summary_rows(const AnalysisResult& result, const AnalysisOptions& options,
                            std::optional<double> alpha_target = std::nullopt) {
    Records rows;
    if (result.sigma) rows.add("sigma", *result.sigma);
    if (result.delta_abs) {
        rows.add("delta_sigma", options.delta_sigma);
        rows.add("delta_abs", *result.delta_abs);
        rows.add("window", options.window);
        rows.add("sigma_mode", to_string(options.sigma_mode));
    }
    rows.add("intervals", result.dist.total);
    rows.add("longest", result.dist.longest);
    rows.add("r1", result.r1);
    rows.add("r10", result.r10);
    if (result.fit) {
        rows.add("alpha", result.fit->alpha);
        rows.add("fit_r0", result.fit->r0);
        rows.add("fit_residual", result.fit->residual);
        rows.add("fit_min", result.fit->n_min);
        rows.add("fit_max", result.fit->n_max);
        rows.add("fit_knots", result.fit->knots_used);
    } else {
        rows.add("alpha", NAN);
        rows.add("fit_note", result.fit_error);
    }
    rows.add("cutoff_fraction", options.cutoff_fraction);
    if (result.curve) {
        rows.add("curve_cutoff", result.curve->cutoff);
        rows.add("curve_stat_cutoff", result.curve->stat_cutoff);
        rows.add("curve_points", result.curve->samples.size());
    } else {
        rows.add("curve_points", std::int64_t(0));
        rows.add("curve_note", result.curve_error);
    }
    rows.add("plateau_lower", options.plateau_lower);
    rows.add("plateau", result.plateau ? *result.plateau : NAN);
    if (!result.plateau) rows.add("plateau_note", result.plateau_error);
    if (alpha_target) {
        rows.add("alpha_target", *alpha_target);
        if (result.plateau) rows.add("plateau_over_alpha", *result.plateau / *alpha_target);
    }
    return rows;
}

}  // namespace lvp
