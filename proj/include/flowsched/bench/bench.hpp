#pragma once

#include <map>
#include <string>
#include <vector>

#include "flowsched/rational.hpp"

namespace flowsched::bench {

enum class BoundKind { Upper, Lower };

struct BoundRecord {
    std::string instance_id;
    std::string method;
    BoundKind kind = BoundKind::Lower;
    Rational value;
    double runtime_seconds = 0.0;
    std::string status = "optimal";
};

/// (ub - best_lb) / best_lb * 100, exact. Requires best_lb > 0.
Rational gap_upper(const Rational& ub, const Rational& best_lb);
/// (best_ub - lb) / lb * 100, exact. Requires lb > 0.
Rational gap_lower(const Rational& best_ub, const Rational& lb);

/// Fixed-decimal rendering of an exact percent (round half away from zero).
std::string percent_2dp(const Rational& percent);

/// (prod (x_i + s))^(1/n) - s. Floating point is confined to reporting.
double shifted_geomean(const std::vector<double>& values, double shift);

struct ProfileCurve {
    std::string method;
    std::vector<std::pair<double, double>> points;  // (gap percent, fraction <= gap)
};

/// One nondecreasing step curve per method; every curve ends at fraction 1.
std::vector<ProfileCurve> performance_profile(
    const std::map<std::string, std::vector<Rational>>& gaps_by_method);

/// Per-record gaps against the best bounds within the record set.
std::map<std::string, Rational> best_lower_bounds(const std::vector<BoundRecord>& records);
std::map<std::string, Rational> best_upper_bounds(const std::vector<BoundRecord>& records);

enum class ReportFormat { Csv, Markdown };

/// Deterministic table: instance, method, kind, value, gap, runtime, status,
/// followed by min / shifted-geomean / max summary rows per method.
std::string render_report(const std::vector<BoundRecord>& records, ReportFormat format);

void write_report(const std::vector<BoundRecord>& records, ReportFormat format,
                  const std::string& path);

/// Profile curves as CSV (method, gap, fraction) for external plotting.
std::string render_profiles_csv(const std::vector<ProfileCurve>& curves);

}  // namespace flowsched::bench
