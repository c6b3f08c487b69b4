#include "flowsched/models/interval_sets.hpp"

#include <algorithm>
#include <stdexcept>

namespace flowsched::models {

IntervalSets::IntervalSets(const Instance& inst, const Discretization& grid, SetVariant variant)
    : grid_(&grid), variant_(variant) {
    const int n = grid.intervals();
    for (const auto& job : inst.jobs) {
        JobIntervalSets sets;
        const Rational latest = job.latest_start();

        for (int i = 1; i <= n; ++i) {
            if (job.release < grid.upper(i) && latest >= grid.lower(i)) sets.startable.push_back(i);
            if (job.deadline > grid.lower(i) && job.release < grid.upper(i))
                sets.touchable.push_back(i);
        }

        for (int i : sets.startable) {
            std::vector<int>& q = sets.affected[i];
            for (int k : sets.touchable)
                if (k >= i && grid.upper(i) + job.processing > grid.lower(k)) q.push_back(k);
            std::vector<int>& e = sets.completion[i];
            for (int k = 1; k <= n; ++k)
                if (grid.lower(i) + job.processing <= grid.upper(k) &&
                    grid.upper(i) + job.processing > grid.lower(k))
                    e.push_back(k);
        }

        for (int i : sets.touchable) {
            std::vector<int>& p = sets.covering[i];
            std::vector<int>& pf = sets.covering_full[i];
            for (int k : sets.startable) {
                if (variant == SetVariant::UpperBound) {
                    // starting in k can put processing into interval i
                    if (!(grid.lower(k) <= grid.lower(i) &&
                          grid.lower(i) < grid.upper(k) + job.processing))
                        continue;
                    p.push_back(k);
                    if (max(grid.lower(k), job.release) + job.processing >=
                        min(grid.upper(i), job.deadline))
                        pf.push_back(k);
                } else {
                    // start at t_{k-1} keeps the arc shut for all of interval i
                    if (k <= i && grid.lower(k) + job.processing >= grid.upper(i)) {
                        p.push_back(k);
                        pf.push_back(k);
                    }
                }
            }
        }
        per_job_[job.arc] = std::move(sets);
        jobs_[job.arc] = &job;
    }
}

const JobIntervalSets& IntervalSets::job(const std::string& arc) const {
    auto it = per_job_.find(arc);
    if (it == per_job_.end()) throw std::invalid_argument("no job on arc '" + arc + "'");
    return it->second;
}

Rational IntervalSets::mu_upper(const Job& job, int k, int i) const {
    const Discretization& g = *grid_;
    if (variant_ == SetVariant::ConformalLower) return g.length(i);
    return min(min(g.upper(i), job.deadline), g.upper(k) + job.processing) -
           max(g.lower(i), job.release);
}

Rational IntervalSets::mu_lower(const Job& job, int k, int i) const {
    const Discretization& g = *grid_;
    if (variant_ == SetVariant::ConformalLower) return g.length(i);
    const auto& sets = per_job_.at(job.arc);
    if (k == i) {
        // start interval: least processing happens when the job starts as
        // late as possible
        return max(Rational(0), min(g.upper(k), job.deadline) - job.latest_start());
    }
    const auto& full = sets.covering_full.at(i);
    if (std::find(full.begin(), full.end(), k) != full.end())
        return min(g.upper(i), job.deadline) - max(g.lower(i), job.release);
    return max(Rational(0), max(g.lower(k), job.release) + job.processing - g.lower(i));
}

}  // namespace flowsched::models
