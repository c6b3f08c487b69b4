#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowsched/instance.hpp"
#include "flowsched/models/tdip.hpp"
#include "flowsched/timegrid.hpp"

namespace flowsched::heur {

using models::ZVector;

/// Per-interval processing proportions induced by a feasible schedule.
ZVector induced_xi(const Instance& inst, const Discretization& grid, const Schedule& sched);

/// Start times minimizing the l1 distance between the induced proportions
/// and z, job by job; ties resolved toward the earliest start.
Schedule projection_heuristic(const Instance& inst, const Discretization& grid, const ZVector& z);

/// Start times balancing half the z mass on each side of the job midpoint,
/// clamped into the window. Mass is rescaled to the processing time; a job
/// with zero mass is an error.
Schedule com_heuristic(const Instance& inst, const Discretization& grid, const ZVector& z);

struct HeuristicRun {
    std::string source;  // LP-root | LP-snapshot | incumbent-snapshot
    std::string label;   // paper-style bound name (CoM, Proj-LP..., ...)
    std::optional<Schedule> schedule;
    std::optional<Rational> value;
    std::optional<std::string> error;  // set when the source was unavailable
};

struct PipelineConfig {
    std::optional<long> snapshot_nodes;     // deterministic tau for tests
    std::optional<double> snapshot_seconds; // wall-clock tau (paper protocol)
    std::optional<long> node_limit;
    std::optional<double> time_limit;
};

struct PipelineResult {
    std::vector<HeuristicRun> runs;
    std::optional<Rational> best_value;  // Max of All
    std::optional<Schedule> best_schedule;
};

/// Solves the upper-bound model on the given grid, applies both heuristics
/// to the root LP z, the snapshot LP z and the snapshot incumbent z, and
/// evaluates every repaired schedule exactly.
PipelineResult heuristic_pipeline(const Instance& inst, const Discretization& grid,
                                  const PipelineConfig& config);

}  // namespace flowsched::heur
