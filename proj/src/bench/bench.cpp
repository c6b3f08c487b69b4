#include "flowsched/bench/bench.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flowsched::bench {

Rational gap_upper(const Rational& ub, const Rational& best_lb) {
    if (best_lb <= Rational(0))
        throw std::invalid_argument("gap needs a positive reference bound, got " + best_lb.str());
    return (ub - best_lb) / best_lb * Rational(100);
}

Rational gap_lower(const Rational& best_ub, const Rational& lb) {
    if (lb <= Rational(0))
        throw std::invalid_argument("gap needs a positive bound, got " + lb.str());
    return (best_ub - lb) / lb * Rational(100);
}

std::string percent_2dp(const Rational& percent) {
    const bool neg = percent.sign() < 0;
    const Rational mag = percent.abs();
    // round half up in hundredths
    const Rational scaled = mag * Rational(100) + Rational(1, 2);
    mpz_class units = scaled.floor().numerator();
    std::string digits = units.get_str();
    while (digits.size() < 3) digits.insert(digits.begin(), '0');
    digits.insert(digits.size() - 2, ".");
    return (neg ? "-" : "") + digits;
}

double shifted_geomean(const std::vector<double>& values, double shift) {
    if (values.empty()) throw std::invalid_argument("shifted geometric mean of an empty list");
    double log_sum = 0.0;
    for (double x : values) {
        const double shifted = x + shift;
        if (shifted <= 0.0)
            throw std::invalid_argument("shifted geometric mean needs x + shift > 0");
        log_sum += std::log(shifted);
    }
    return std::exp(log_sum / static_cast<double>(values.size())) - shift;
}

std::vector<ProfileCurve> performance_profile(
    const std::map<std::string, std::vector<Rational>>& gaps_by_method) {
    if (gaps_by_method.empty()) throw std::invalid_argument("no records to profile");
    std::vector<ProfileCurve> curves;
    for (const auto& [method, gaps] : gaps_by_method) {
        if (gaps.empty()) throw std::invalid_argument("method '" + method + "' has no gaps");
        std::vector<Rational> sorted = gaps;
        std::sort(sorted.begin(), sorted.end());
        ProfileCurve curve;
        curve.method = method;
        const double total = static_cast<double>(sorted.size());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
            curve.points.push_back({sorted[i].to_double(), static_cast<double>(i + 1) / total});
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::map<std::string, Rational> best_lower_bounds(const std::vector<BoundRecord>& records) {
    std::map<std::string, Rational> best;
    for (const auto& r : records) {
        if (r.kind != BoundKind::Lower) continue;
        auto it = best.find(r.instance_id);
        if (it == best.end() || r.value > it->second) best[r.instance_id] = r.value;
    }
    return best;
}

std::map<std::string, Rational> best_upper_bounds(const std::vector<BoundRecord>& records) {
    std::map<std::string, Rational> best;
    for (const auto& r : records) {
        if (r.kind != BoundKind::Upper) continue;
        auto it = best.find(r.instance_id);
        if (it == best.end() || r.value < it->second) best[r.instance_id] = r.value;
    }
    return best;
}

namespace {

struct Row {
    const BoundRecord* rec;
    std::optional<Rational> gap;
};

std::vector<Row> gapped_rows(const std::vector<BoundRecord>& records) {
    const auto best_lb = best_lower_bounds(records);
    const auto best_ub = best_upper_bounds(records);
    std::vector<Row> rows;
    for (const auto& r : records) {
        Row row{&r, std::nullopt};
        if (r.kind == BoundKind::Upper) {
            auto it = best_lb.find(r.instance_id);
            if (it != best_lb.end() && it->second > Rational(0))
                row.gap = gap_upper(r.value, it->second);
        } else {
            auto it = best_ub.find(r.instance_id);
            if (it != best_ub.end() && r.value > Rational(0))
                row.gap = gap_lower(it->second, r.value);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string runtime_str(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", seconds);
    return buf;
}

}  // namespace

std::string render_report(const std::vector<BoundRecord>& records, ReportFormat format) {
    const auto rows = gapped_rows(records);
    std::ostringstream out;
    const bool md = format == ReportFormat::Markdown;

    if (md) {
        out << "| instance | method | kind | value | gap% | runtime_s | status |\n";
        out << "|---|---|---|---|---|---|---|\n";
    } else {
        out << "instance,method,kind,value,gap_percent,runtime_s,status\n";
    }
    for (const auto& row : rows) {
        const auto& r = *row.rec;
        const std::string kind = r.kind == BoundKind::Upper ? "upper" : "lower";
        const std::string gap = row.gap ? percent_2dp(*row.gap) : "";
        if (md)
            out << "| " << r.instance_id << " | " << r.method << " | " << kind << " | "
                << r.value.str() << " | " << gap << " | " << runtime_str(r.runtime_seconds)
                << " | " << r.status << " |\n";
        else
            out << r.instance_id << "," << r.method << "," << kind << "," << r.value.str() << ","
                << gap << "," << runtime_str(r.runtime_seconds) << "," << r.status << "\n";
    }

    // per-method summary over gaps: min, shifted geometric mean (shift 1), max
    std::set<std::string> methods;
    for (const auto& row : rows) methods.insert(row.rec->method);
    for (const auto& method : methods) {
        std::vector<double> gaps;
        std::optional<Rational> lo, hi;
        for (const auto& row : rows) {
            if (row.rec->method != method || !row.gap) continue;
            gaps.push_back(row.gap->to_double());
            if (!lo || *row.gap < *lo) lo = row.gap;
            if (!hi || *row.gap > *hi) hi = row.gap;
        }
        if (gaps.empty()) continue;
        char avg[32];
        std::snprintf(avg, sizeof(avg), "%.2f", shifted_geomean(gaps, 1.0));
        if (md)
            out << "| summary | " << method << " | gaps | min " << percent_2dp(*lo) << " | avg "
                << avg << " | max " << percent_2dp(*hi) << " | |\n";
        else
            out << "summary," << method << ",gaps," << percent_2dp(*lo) << "," << avg << ","
                << percent_2dp(*hi) << ",\n";
    }
    return out.str();
}

void write_report(const std::vector<BoundRecord>& records, ReportFormat format,
                  const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << render_report(records, format);
}

std::string render_profiles_csv(const std::vector<ProfileCurve>& curves) {
    std::ostringstream out;
    out << "method,gap_percent,fraction\n";
    for (const auto& c : curves) {
        for (const auto& [g, frac] : c.points) {
            char line[96];
            std::snprintf(line, sizeof(line), "%s,%.6g,%.6g\n", c.method.c_str(), g, frac);
            out << line;
        }
    }
    return out.str();
}

}  // namespace flowsched::bench
