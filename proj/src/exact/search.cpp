#include "flowsched/exact/search.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "flowsched/evaluator.hpp"
#include "flowsched/exact/candidates.hpp"

namespace flowsched::exact {

namespace {

struct Enumerator {
    const Instance& inst;
    std::vector<std::string> arcs;                 // job arcs in id order
    std::vector<std::vector<Rational>> candidates; // per arc
    std::map<std::uint64_t, Rational> static_memo; // shut-job bitmask -> max flow

    Enumerator(const Instance& instance, std::vector<std::vector<Rational>> cand,
               std::vector<std::string> arc_ids)
        : inst(instance), arcs(std::move(arc_ids)), candidates(std::move(cand)) {}

    long product_size() const {
        long total = 1;
        for (const auto& c : candidates) {
            if (c.empty()) return 0;
            if (total > (1L << 50) / static_cast<long>(c.size())) return -1;  // overflow guard
            total *= static_cast<long>(c.size());
        }
        return total;
    }

    Rational static_flow(std::uint64_t mask) {
        auto it = static_memo.find(mask);
        if (it != static_memo.end()) return it->second;
        std::vector<std::string> shut;
        for (std::size_t j = 0; j < arcs.size(); ++j)
            if (mask & (1ULL << j)) shut.push_back(arcs[j]);
        Rational value = static_max_flow(inst, shut);
        static_memo.emplace(mask, value);
        return value;
    }

    // decomposed value: sum over induced intervals of length * static flow
    Rational value_of(const std::vector<Rational>& starts) {
        std::vector<Rational> points{Rational(0), inst.horizon};
        for (std::size_t j = 0; j < arcs.size(); ++j) {
            points.push_back(starts[j]);
            points.push_back(starts[j] + inst.job_for(arcs[j])->processing);
        }
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());

        Rational total(0);
        for (std::size_t i = 1; i < points.size(); ++i) {
            const Rational& lo = points[i - 1];
            const Rational& hi = points[i];
            std::uint64_t mask = 0;
            for (std::size_t j = 0; j < arcs.size(); ++j) {
                const Rational end = starts[j] + inst.job_for(arcs[j])->processing;
                if (starts[j] < hi && hi <= end) mask |= 1ULL << j;
            }
            total += (hi - lo) * static_flow(mask);
        }
        return total;
    }

    template <typename Visit>
    void enumerate(Visit&& visit) {
        std::vector<std::size_t> idx(arcs.size(), 0);
        std::vector<Rational> starts(arcs.size());
        for (;;) {
            for (std::size_t j = 0; j < arcs.size(); ++j) starts[j] = candidates[j][idx[j]];
            visit(starts);
            std::size_t j = arcs.size();
            while (j > 0) {
                --j;
                if (++idx[j] < candidates[j].size()) break;
                idx[j] = 0;
                if (j == 0) return;
            }
            if (arcs.empty()) return;
        }
    }
};

Enumerator make_candidate_enumerator(const Instance& inst, long budget) {
    if (inst.has_storage())
        throw std::invalid_argument("exact search requires an instance without storage");
    if (inst.jobs.size() > 62) throw std::invalid_argument("too many jobs for the bitmask memo");
    const auto cand = candidate_sets(inst);
    std::vector<std::string> arcs;
    std::vector<std::vector<Rational>> lists;
    for (const auto& [arc, starts] : cand.starts) {
        arcs.push_back(arc);
        lists.push_back(starts);
    }
    Enumerator e(inst, std::move(lists), std::move(arcs));
    const long size = e.product_size();
    if (size < 0 || size > budget)
        throw std::runtime_error("candidate product exceeds the enumeration budget of " +
                                 std::to_string(budget));
    return e;
}

}  // namespace

SearchResult exact_search_no_storage(const Instance& inst, long budget) {
    Enumerator e = make_candidate_enumerator(inst, budget);
    SearchResult best;
    bool have = false;
    e.enumerate([&](const std::vector<Rational>& starts) {
        const Rational v = e.value_of(starts);
        best.evaluated += 1;
        if (!have || v > best.value) {
            have = true;
            best.value = v;
            best.schedule.starts.clear();
            for (std::size_t j = 0; j < e.arcs.size(); ++j)
                best.schedule.starts[e.arcs[j]] = starts[j];
        }
    });
    if (!have && inst.jobs.empty()) {
        best.value = inst.horizon * static_max_flow(inst, {});
        best.evaluated = 1;
    }
    return best;
}

std::vector<Schedule> exact_search_all_optima(const Instance& inst, long budget,
                                              std::size_t max_keep) {
    Enumerator e = make_candidate_enumerator(inst, budget);
    std::vector<Schedule> optima;
    Rational best;
    bool have = false;
    e.enumerate([&](const std::vector<Rational>& starts) {
        const Rational v = e.value_of(starts);
        if (!have || v > best) {
            have = true;
            best = v;
            optima.clear();
        }
        if (v == best && optima.size() < max_keep) {
            Schedule s;
            for (std::size_t j = 0; j < e.arcs.size(); ++j) s.starts[e.arcs[j]] = starts[j];
            optima.push_back(std::move(s));
        }
    });
    return optima;
}

SearchResult grid_oracle(const Instance& inst, const Rational& step, long budget) {
    if (step <= Rational(0)) throw std::invalid_argument("grid step must be positive");
    std::vector<std::string> arcs;
    std::vector<std::vector<Rational>> lists;
    for (const auto& job : inst.jobs) {
        std::vector<Rational> starts;
        for (Rational t = job.release; t <= job.latest_start(); t += step) starts.push_back(t);
        arcs.push_back(job.arc);
        lists.push_back(std::move(starts));
    }
    // deterministic arc-id order
    std::vector<std::size_t> order(arcs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return arcs[a] < arcs[b]; });
    std::vector<std::string> sorted_arcs;
    std::vector<std::vector<Rational>> sorted_lists;
    for (std::size_t i : order) {
        sorted_arcs.push_back(arcs[i]);
        sorted_lists.push_back(std::move(lists[i]));
    }

    Enumerator e(inst, std::move(sorted_lists), std::move(sorted_arcs));
    const long size = e.product_size();
    if (size < 0 || size > budget)
        throw std::runtime_error("start grid product exceeds the enumeration budget of " +
                                 std::to_string(budget));

    SearchResult best;
    bool have = false;
    e.enumerate([&](const std::vector<Rational>& starts) {
        Schedule s;
        for (std::size_t j = 0; j < e.arcs.size(); ++j) s.starts[e.arcs[j]] = starts[j];
        const Rational v = evaluate_schedule(inst, s).value;
        best.evaluated += 1;
        if (!have || v > best.value) {
            have = true;
            best.value = v;
            best.schedule = std::move(s);
        }
    });
    if (!have && inst.jobs.empty()) {
        best.value = inst.horizon * static_max_flow(inst, {});
        best.evaluated = 1;
    }
    return best;
}

}  // namespace flowsched::exact
