#pragma once

#include <vector>

#include "flowsched/rational.hpp"

namespace flowsched {

/// Capacitated digraph over exact rationals.
struct FlowGraph {
    struct ArcRec {
        int tail;
        int head;
        Rational capacity;
    };
    std::vector<ArcRec> arcs;
    int node_count = 0;

    int add_node() { return node_count++; }
    int add_arc(int tail, int head, Rational capacity);
};

struct MaxFlowResult {
    Rational value;
    std::vector<Rational> flow;       // per arc, same order as FlowGraph::arcs
    std::vector<bool> source_side;    // min-cut certificate: residual-reachable nodes
    Rational cut_capacity;            // total capacity crossing the cut (== value)
};

/// Exact maximum s-t flow. Denominators are cleared so the combinatorial
/// engine runs on integers; results are rescaled back. Throws when
/// source == sink.
MaxFlowResult max_flow(const FlowGraph& graph, int source, int sink);

}  // namespace flowsched
