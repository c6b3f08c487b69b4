#pragma once

#include <map>
#include <string>
#include <vector>

#include "flowsched/instance.hpp"

namespace flowsched::exact {

/// Finite candidate start-time sets: the recursion seeded with the window
/// ends, closed under shifts by other jobs' processing times, stopped after
/// |A_1| - 1 rounds. Without storage some optimal schedule lives in their
/// product.
struct CandidateSets {
    std::map<std::string, std::vector<Rational>> starts;  // sorted, per job arc
};

CandidateSets candidate_sets(const Instance& inst);

/// The intermediate set after k rounds (monotone in k; used by tests).
CandidateSets candidate_sets_round(const Instance& inst, int rounds);

}  // namespace flowsched::exact
