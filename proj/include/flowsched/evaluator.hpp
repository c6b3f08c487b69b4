#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flowsched/instance.hpp"
#include "flowsched/maxflow.hpp"
#include "flowsched/milp/model.hpp"
#include "flowsched/timegrid.hpp"

namespace flowsched {

/// The max-flow realization of the evaluation problem: one node copy per
/// (node, interval), arc copies with capacity (t_i - t_{i-1}) u_a (zero on
/// outage intervals), storage chain arcs with capacity u_v, and aggregating
/// super terminals. Storage carries nothing across the horizon ends.
struct TimeExpandedNetwork {
    FlowGraph graph;
    int super_source = -1;
    int super_sink = -1;
    Discretization grid;
    // arc copy ids: flow_arc_id[(arc index in instance network, interval i)]
    std::map<std::pair<int, int>, int> arc_copy;
    // storage arc ids: (storage node id, breakpoint i) holding x_{vi}, i = 1..n-1
    std::map<std::pair<std::string, int>, int> storage_arc;
};

struct FlowSolution {
    Rational value;
    // x_{ai}: flow on arc a during interval i (sparse; zero entries omitted)
    std::map<std::pair<std::string, int>, Rational> arc_flow;
    // x_{vi}: amount stored in v at breakpoint t_i (sparse)
    std::map<std::pair<std::string, int>, Rational> storage_level;
};

TimeExpandedNetwork build_time_expanded(const Instance& inst, const Discretization& grid,
                                        const OutageMap& outages);

FlowSolution solve_time_expanded(const Instance& inst, const TimeExpandedNetwork& net);

/// val(t*): exact optimum of the evaluation problem for a feasible schedule.
FlowSolution evaluate_schedule(const Instance& inst, const Schedule& sched);

/// Independent oracle path: the evaluation LP in its stated algebraic form.
milp::MilpModel build_evaluation_lp(const Instance& inst, const Discretization& grid,
                                    const OutageMap& outages);

/// Static max flow of the network with the given job arcs removed.
Rational static_max_flow(const Instance& inst, const std::vector<std::string>& shut_arcs);

/// W = {} decomposition: sum over intervals of length times the static
/// max-flow value of the available network.
Rational evaluate_no_storage_decomposed(const Instance& inst, const Schedule& sched);

std::string flow_solution_to_json(const FlowSolution& sol);

}  // namespace flowsched
