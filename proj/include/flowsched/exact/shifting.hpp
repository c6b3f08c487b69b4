#pragma once

#include <string>
#include <vector>

#include "flowsched/instance.hpp"

namespace flowsched::exact {

/// Graph on the job arcs with edges between jobs sharing a start or
/// completion time; its components are the sets that shift together.
struct SolutionGraph {
    std::vector<std::string> arcs;            // job arcs, instance order
    std::vector<std::vector<int>> adjacency;  // indices into arcs
    std::vector<int> component;               // component id per job
    std::vector<std::vector<int>> distance;   // hop distance, -1 when disconnected
};

/// A closed breakpoint set (one per component of the solution graph): the
/// start/completion times of the component's jobs. Free when none of those
/// jobs sits at a window end.
struct ClosedSet {
    std::vector<int> jobs;        // indices into SolutionGraph::arcs
    std::vector<Rational> times;  // sorted closed time set
    bool free = false;
};

struct ClosureAnalysis {
    SolutionGraph graph;
    std::vector<ClosedSet> sets;
};

ClosureAnalysis closure_and_freedom(const Instance& inst, const Schedule& sched);

/// Largest shift magnitude that keeps the interval structure intact (the
/// appendix bound over the induced discretization).
Rational shift_bound(const Instance& inst, const Schedule& sched,
                     const std::vector<std::string>& component_arcs);

/// Shifts the component's starts by eps (either sign); rejects shifts past
/// the structural bound or outside a job window.
Schedule shift_schedule(const Instance& inst, const Schedule& sched,
                        const std::vector<std::string>& component_arcs, const Rational& eps);

}  // namespace flowsched::exact
