#pragma once

#include <optional>

#include "flowsched/instance.hpp"
#include "flowsched/milp/model.hpp"
#include "flowsched/timegrid.hpp"

namespace flowsched::models {

enum class ModelKind { Ctip, Tdip };

/// "before" must finish before "after" starts. CTIP gets the pairwise
/// indicator exclusions; TDIP gets the start-indicator approximation (pass
/// the model's grid).
milp::MilpModel add_precedence(milp::MilpModel model, ModelKind kind, const Instance& inst,
                               const std::string& before, const std::string& after,
                               const Discretization* grid = nullptr);

/// At most `limit` of the given jobs in progress in any interval.
milp::MilpModel add_incompatibility(milp::MilpModel model, ModelKind kind, const Instance& inst,
                                    const std::vector<std::string>& arcs, int limit = 1,
                                    const Discretization* grid = nullptr);

enum class SplitMode { Inbound, Outbound, Both };

/// Standard node-splitting device: a non-storage node becomes two nodes
/// joined by an arc of capacity min(sum in, sum out); a storage node becomes
/// a three-node chain with the middle node holding the storage. An optional
/// node job lands on the new arc(s); Both on a storage node produces two
/// jobs linked for simultaneous processing.
Instance split_node(const Instance& inst, const std::string& node, SplitMode mode,
                    const std::optional<Job>& node_job = std::nullopt);

}  // namespace flowsched::models
