#pragma once

#include <cstdint>

#include "flowsched/instance.hpp"

namespace flowsched {

/// Stand-in random instance generator (the published generator's capacity
/// parameter lives in an external reference, so this one is ours). All data
/// is integral; output always passes validate_instance and the source can
/// reach the sink.
struct GeneratorParams {
    int num_nodes = 4;       // includes source and sink
    int num_arcs = 5;
    int num_jobs = 2;
    long cap_min = 1, cap_max = 10;
    long window_min = 4, window_max = 8;  // job window width d - r
    long proc_min = 1, proc_max = 3;
    long horizon = 10;
    int num_storage = 0;
    long storage_cap_min = 1, storage_cap_max = 5;
};

/// Pure function of (seed, params); throws std::invalid_argument on
/// infeasible parameter combinations (e.g. proc_max > window_min).
Instance generate_instance(std::uint64_t seed, const GeneratorParams& params);

}  // namespace flowsched
