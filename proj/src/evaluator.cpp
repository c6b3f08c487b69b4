#include "flowsched/evaluator.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace flowsched {

namespace {

int arc_index(const Network& net, const std::string& id) {
    for (std::size_t i = 0; i < net.arcs.size(); ++i)
        if (net.arcs[i].id == id) return static_cast<int>(i);
    throw std::invalid_argument("unknown arc '" + id + "'");
}

std::vector<std::set<int>> outage_lookup(const Instance& inst, const Discretization& grid,
                                         const OutageMap& outages) {
    std::vector<std::set<int>> shut(inst.network.arcs.size());
    for (const auto& [arc_id, ivals] : outages.intervals) {
        const int a = arc_index(inst.network, arc_id);
        for (int i : ivals) {
            if (i < 1 || i > grid.intervals())
                throw std::invalid_argument("outage interval " + std::to_string(i) +
                                            " outside grid range");
            shut[a].insert(i);
        }
    }
    return shut;
}

}  // namespace

TimeExpandedNetwork build_time_expanded(const Instance& inst, const Discretization& grid,
                                        const OutageMap& outages) {
    const Network& net = inst.network;
    const int n = grid.intervals();
    const auto shut = outage_lookup(inst, grid, outages);

    TimeExpandedNetwork ten;
    ten.grid = grid;

    // node copies (v, i) for i = 1..n
    std::map<std::pair<std::string, int>, int> node_id;
    for (const auto& v : net.nodes)
        for (int i = 1; i <= n; ++i) node_id[{v, i}] = ten.graph.add_node();
    ten.super_source = ten.graph.add_node();
    ten.super_sink = ten.graph.add_node();

    Rational source_out_total(0);
    for (const Arc* a : net.out_arcs(net.source)) source_out_total += a->capacity;

    for (int ai = 0; ai < static_cast<int>(net.arcs.size()); ++ai) {
        const Arc& a = net.arcs[ai];
        for (int i = 1; i <= n; ++i) {
            const Rational cap = shut[ai].count(i) ? Rational(0) : grid.length(i) * a.capacity;
            ten.arc_copy[{ai, i}] =
                ten.graph.add_arc(node_id[{a.tail, i}], node_id[{a.head, i}], cap);
        }
    }
    // storage chain (v, i) -> (v, i+1) carries x_{vi}; boundary levels are zero
    for (const auto& [v, cap] : net.storage)
        for (int i = 1; i <= n - 1; ++i)
            ten.storage_arc[{v, i}] =
                ten.graph.add_arc(node_id[{v, i}], node_id[{v, i + 1}], cap);

    // super terminals aggregate the per-interval source/sink copies
    for (int i = 1; i <= n; ++i) {
        ten.graph.add_arc(ten.super_source, node_id[{net.source, i}],
                          grid.length(i) * source_out_total);
        Rational sink_in_total(0);
        for (const Arc* a : net.in_arcs(net.sink)) sink_in_total += a->capacity;
        ten.graph.add_arc(node_id[{net.sink, i}], ten.super_sink, grid.length(i) * sink_in_total);
    }
    return ten;
}

FlowSolution solve_time_expanded(const Instance& inst, const TimeExpandedNetwork& net) {
    const auto mf = max_flow(net.graph, net.super_source, net.super_sink);
    FlowSolution sol;
    sol.value = mf.value;
    for (const auto& [key, arc_id] : net.arc_copy) {
        if (mf.flow[arc_id].is_zero()) continue;
        sol.arc_flow[{inst.network.arcs[key.first].id, key.second}] = mf.flow[arc_id];
    }
    for (const auto& [key, arc_id] : net.storage_arc) {
        if (mf.flow[arc_id].is_zero()) continue;
        sol.storage_level[key] = mf.flow[arc_id];
    }
    return sol;
}

FlowSolution evaluate_schedule(const Instance& inst, const Schedule& sched) {
    if (!is_feasible(inst, sched))
        throw std::invalid_argument("evaluate_schedule requires a feasible schedule");
    const auto [grid, outages] = induced_grid(inst, sched);
    return solve_time_expanded(inst, build_time_expanded(inst, grid, outages));
}

milp::MilpModel build_evaluation_lp(const Instance& inst, const Discretization& grid,
                                    const OutageMap& outages) {
    using namespace milp;
    const Network& net = inst.network;
    const int n = grid.intervals();
    const auto shut = outage_lookup(inst, grid, outages);

    MilpModel m;
    // x_{ai}, bounded by the interval capacity (constraints (4)-(6) as bounds)
    std::vector<std::vector<int>> x(net.arcs.size(), std::vector<int>(n + 1, -1));
    for (int ai = 0; ai < static_cast<int>(net.arcs.size()); ++ai) {
        const Arc& a = net.arcs[ai];
        for (int i = 1; i <= n; ++i) {
            const Rational cap = shut[ai].count(i) ? Rational(0) : grid.length(i) * a.capacity;
            x[ai][i] = m.add_continuous("x(" + a.id + "," + std::to_string(i) + ")", Rational(0),
                                        cap, {"x", a.id, i});
        }
    }
    // x_{vi} storage levels, i = 0..n, boundary fixed to zero
    std::map<std::pair<std::string, int>, int> xs;
    for (const auto& [v, cap] : net.storage) {
        for (int i = 0; i <= n; ++i) {
            const bool boundary = (i == 0 || i == n);
            xs[{v, i}] = m.add_continuous("xs(" + v + "," + std::to_string(i) + ")", Rational(0),
                                          boundary ? Rational(0) : cap, {"xs", v, i});
        }
    }

    // conservation at plain transshipment nodes and at storage nodes
    for (const auto& v : net.nodes) {
        if (v == net.source || v == net.sink) continue;
        const bool stores = net.storage.count(v) > 0;
        for (int i = 1; i <= n; ++i) {
            std::vector<LinearTerm> terms;
            for (const Arc* a : net.out_arcs(v)) terms.push_back({x[arc_index(net, a->id)][i], Rational(1)});
            for (const Arc* a : net.in_arcs(v)) terms.push_back({x[arc_index(net, a->id)][i], Rational(-1)});
            if (stores) {
                terms.push_back({xs[{v, i}], Rational(1)});
                terms.push_back({xs[{v, i - 1}], Rational(-1)});
            }
            m.add_constraint("cons(" + v + "," + std::to_string(i) + ")", std::move(terms),
                             ConstraintSense::Equal, Rational(0));
        }
    }

    // objective (1): net outflow of the source summed over intervals
    std::vector<LinearTerm> obj;
    for (const Arc* a : net.out_arcs(net.source))
        for (int i = 1; i <= n; ++i) obj.push_back({x[arc_index(net, a->id)][i], Rational(1)});
    for (const Arc* a : net.in_arcs(net.source))
        for (int i = 1; i <= n; ++i) obj.push_back({x[arc_index(net, a->id)][i], Rational(-1)});
    m.set_objective(ObjectiveSense::Maximize, std::move(obj));
    return m;
}

Rational static_max_flow(const Instance& inst, const std::vector<std::string>& shut_arcs) {
    const Network& net = inst.network;
    FlowGraph g;
    std::map<std::string, int> node_id;
    for (const auto& v : net.nodes) node_id[v] = g.add_node();
    for (const auto& a : net.arcs) {
        const bool shut = std::find(shut_arcs.begin(), shut_arcs.end(), a.id) != shut_arcs.end();
        if (!shut) g.add_arc(node_id[a.tail], node_id[a.head], a.capacity);
    }
    return max_flow(g, node_id[net.source], node_id[net.sink]).value;
}

Rational evaluate_no_storage_decomposed(const Instance& inst, const Schedule& sched) {
    if (inst.has_storage())
        throw std::invalid_argument("decomposed evaluation is only valid without storage");
    const auto [grid, outages] = induced_grid(inst, sched);
    Rational total(0);
    for (int i = 1; i <= grid.intervals(); ++i) {
        std::vector<std::string> shut;
        for (const auto& [arc_id, ivals] : outages.intervals)
            if (std::binary_search(ivals.begin(), ivals.end(), i)) shut.push_back(arc_id);
        total += grid.length(i) * static_max_flow(inst, shut);
    }
    return total;
}

std::string flow_solution_to_json(const FlowSolution& sol) {
    nlohmann::ordered_json j;
    j["value"] = sol.value.str();
    j["flows"] = nlohmann::ordered_json::object();
    for (const auto& [key, val] : sol.arc_flow)
        j["flows"][key.first + "@" + std::to_string(key.second)] = val.str();
    j["storage"] = nlohmann::ordered_json::object();
    for (const auto& [key, val] : sol.storage_level)
        j["storage"][key.first + "@" + std::to_string(key.second)] = val.str();
    return j.dump(2) + "\n";
}

}  // namespace flowsched
