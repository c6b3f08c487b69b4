#pragma once

#include <optional>
#include <vector>

#include "flowsched/milp/model.hpp"

namespace flowsched::milp {

struct MilpLimits {
    std::optional<double> time_seconds;
    std::optional<long> max_nodes;
};

/// Snapshot requests for the heuristic pipeline: fire once when the node
/// count (deterministic, used in tests) or the wall clock (paper protocol)
/// crosses each mark. Unfired marks are recorded at termination.
struct SnapshotSpec {
    std::vector<long> at_nodes;
    std::vector<double> at_seconds;
};

/// Exact LP solve with integrality relaxed (binaries become [0,1]).
MilpResult solve_lp(const MilpModel& model);

/// Returns the constraint/bound/integrality violations of a proposed start;
/// empty means it is accepted as an initial incumbent.
std::vector<std::string> check_start(const MilpModel& model,
                                     const std::vector<Rational>& assignment);

/// Best-bound-first branch and bound over the binary variables, branching on
/// the most fractional one (ties by variable order). Throws
/// std::invalid_argument when a warm start is infeasible.
MilpResult solve_milp(const MilpModel& model, const MilpLimits& limits = {},
                      const SnapshotSpec& snapshots = {},
                      const std::optional<std::vector<Rational>>& warm_start = std::nullopt);

}  // namespace flowsched::milp
