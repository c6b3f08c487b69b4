#pragma once

#include <map>
#include <string>
#include <vector>

#include "flowsched/instance.hpp"
#include "flowsched/timegrid.hpp"

namespace flowsched::models {

/// Which reading of P_{ai} and the mu bounds to use: the upper-bound model's
/// (any grid) or the conformal lower-bound model's (start = interval start,
/// full-interval processing).
enum class SetVariant { UpperBound, ConformalLower };

struct JobIntervalSets {
    std::vector<int> startable;                    // S_a
    std::vector<int> touchable;                    // T_a
    std::map<int, std::vector<int>> affected;      // Q_{ai}, i in S_a
    std::map<int, std::vector<int>> covering;      // P_{ai}, i in T_a
    std::map<int, std::vector<int>> covering_full; // P*_{ai} subset of P_{ai}
    std::map<int, std::vector<int>> completion;    // E_{ai}, i in S_a
};

class IntervalSets {
public:
    IntervalSets(const Instance& inst, const Discretization& grid, SetVariant variant);

    const JobIntervalSets& job(const std::string& arc) const;
    SetVariant variant() const { return variant_; }

    /// Upper bound on (t_i - t_{i-1}) z_{ai} when job a starts in interval k.
    Rational mu_upper(const Job& job, int k, int i) const;
    /// Lower bound counterpart; k must be in P_{ai}.
    Rational mu_lower(const Job& job, int k, int i) const;

private:
    const Discretization* grid_;
    SetVariant variant_;
    std::map<std::string, JobIntervalSets> per_job_;
    std::map<std::string, const Job*> jobs_;
};

}  // namespace flowsched::models
