#pragma once

#include <vector>

#include "flowsched/instance.hpp"

namespace flowsched::exact {

struct SearchResult {
    Schedule schedule;  // lexicographically smallest optimum (by arc id order)
    Rational value;
    long evaluated = 0;
};

/// Global optimum without storage: exhaustive evaluation over the candidate
/// start-time product, using the per-interval static max-flow decomposition
/// with memoization. Throws when storage is present or the product exceeds
/// the budget.
SearchResult exact_search_no_storage(const Instance& inst, long budget = 1000000);

/// Every optimal candidate tuple (capped), for the shifting property suite.
std::vector<Schedule> exact_search_all_optima(const Instance& inst, long budget = 1000000,
                                              std::size_t max_keep = 256);

/// Brute force over starts r_a + m*step clipped to the windows, evaluated
/// with the full (storage-aware) evaluator. Always a primal bound.
SearchResult grid_oracle(const Instance& inst, const Rational& step, long budget = 1000000);

}  // namespace flowsched::exact
