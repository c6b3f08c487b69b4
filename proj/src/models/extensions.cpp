#include "flowsched/models/extensions.hpp"

#include <algorithm>
#include <stdexcept>

#include "flowsched/models/interval_sets.hpp"

namespace flowsched::models {

using namespace milp;

namespace {

std::string vn(const char* role, const std::string& key, int i) {
    return std::string(role) + "(" + key + "," + std::to_string(i) + ")";
}

void require_job(const Instance& inst, const std::string& arc) {
    if (!inst.job_for(arc)) throw std::invalid_argument("no job on arc '" + arc + "'");
}

}  // namespace

MilpModel add_precedence(MilpModel model, ModelKind kind, const Instance& inst,
                         const std::string& before, const std::string& after,
                         const Discretization* grid) {
    require_job(inst, before);
    require_job(inst, after);
    if (before == after) throw std::invalid_argument("self-precedence is not allowed");

    if (kind == ModelKind::Ctip) {
        const int M = 2 * static_cast<int>(inst.jobs.size()) + 1;
        for (int i = 1; i <= M; ++i) {
            const int wi = model.var_index(vn("w", before, i));
            for (int j = 1; j <= i; ++j) {
                const int wj = model.var_index(vn("w", after, j));
                model.add_constraint("prec(" + before + "<" + after + "," + std::to_string(i) +
                                         "," + std::to_string(j) + ")",
                                     {{wi, Rational(1)}, {wj, Rational(1)}},
                                     ConstraintSense::LessEq, Rational(1));
            }
        }
        return model;
    }

    if (!grid) throw std::invalid_argument("TDIP precedence needs the model grid");
    const IntervalSets sets(inst, *grid, SetVariant::UpperBound);
    const Job& job_before = *inst.job_for(before);
    const auto& sa = sets.job(before).startable;
    const auto& sa2 = sets.job(after).startable;
    for (int i : sa) {
        // if the first job starts in interval i or later, the second cannot
        // start before t_{i-1} + p
        std::vector<LinearTerm> terms;
        for (int i2 : sa)
            if (i2 >= i) terms.push_back({model.var_index(vn("y", before, i2)), Rational(1)});
        for (int j : sa2)
            if (grid->upper(j) <= grid->lower(i) + job_before.processing)
                terms.push_back({model.var_index(vn("y", after, j)), Rational(1)});
        model.add_constraint("prec(" + before + "<" + after + "," + std::to_string(i) + ")",
                             std::move(terms), ConstraintSense::LessEq, Rational(1));
    }
    return model;
}

MilpModel add_incompatibility(MilpModel model, ModelKind kind, const Instance& inst,
                              const std::vector<std::string>& arcs, int limit,
                              const Discretization* grid) {
    if (arcs.size() < 2) throw std::invalid_argument("incompatibility needs at least two jobs");
    for (const auto& a : arcs) require_job(inst, a);
    if (limit < 1) throw std::invalid_argument("incompatibility limit must be positive");

    if (kind == ModelKind::Ctip) {
        const int M = 2 * static_cast<int>(inst.jobs.size()) + 1;
        for (int i = 1; i <= M; ++i) {
            std::vector<LinearTerm> terms;
            for (const auto& a : arcs) terms.push_back({model.var_index(vn("w", a, i)), Rational(1)});
            model.add_constraint("incompat(" + std::to_string(i) + ")", std::move(terms),
                                 ConstraintSense::LessEq, Rational(limit));
        }
        return model;
    }

    if (!grid) throw std::invalid_argument("TDIP incompatibility needs the model grid");
    const IntervalSets sets(inst, *grid, SetVariant::UpperBound);
    for (int i = 1; i <= grid->intervals(); ++i) {
        std::vector<LinearTerm> terms;
        for (const auto& a : arcs) {
            const auto& touch = sets.job(a).touchable;
            if (std::binary_search(touch.begin(), touch.end(), i))
                terms.push_back({model.var_index(vn("z", a, i)), Rational(1)});
        }
        if (terms.size() < 2) continue;
        model.add_constraint("incompat(" + std::to_string(i) + ")", std::move(terms),
                             ConstraintSense::LessEq, Rational(limit));
    }
    return model;
}

Instance split_node(const Instance& inst, const std::string& node, SplitMode mode,
                    const std::optional<Job>& node_job) {
    const Network& net = inst.network;
    if (node == net.source || node == net.sink)
        throw std::invalid_argument("cannot split the source or the sink");
    if (!net.has_node(node)) throw std::invalid_argument("unknown node '" + node + "'");
    const bool stores = net.storage.count(node) > 0;

    Rational in_total(0), out_total(0);
    for (const Arc* a : net.in_arcs(node)) in_total += a->capacity;
    for (const Arc* a : net.out_arcs(node)) out_total += a->capacity;
    const Rational split_cap = min(in_total, out_total);

    auto unique_name = [&](std::string base) {
        while (net.has_node(base)) base += "'";
        return base;
    };
    const std::string head_node = unique_name(node + "'");
    const std::string mid_node = stores ? unique_name(node + "''") : "";
    const std::string tail_node = unique_name(node + (stores ? "'''" : "''"));

    auto unique_arc = [&](std::string base) {
        while (net.arc(base)) base += "'";
        return base;
    };

    Instance out;
    out.horizon = inst.horizon;
    out.simultaneous = inst.simultaneous;
    Network& onet = out.network;
    onet.source = net.source;
    onet.sink = net.sink;
    for (const auto& v : net.nodes) {
        if (v != node) onet.nodes.push_back(v);
    }
    onet.nodes.push_back(head_node);
    if (stores) onet.nodes.push_back(mid_node);
    onet.nodes.push_back(tail_node);

    for (const auto& a : net.arcs) {
        Arc copy = a;
        if (copy.head == node) copy.head = head_node;
        if (copy.tail == node) copy.tail = tail_node;
        onet.arcs.push_back(std::move(copy));
    }
    std::string in_arc_id, out_arc_id;
    if (stores) {
        in_arc_id = unique_arc("mi(" + node + ")");
        onet.arcs.push_back({in_arc_id, head_node, mid_node, split_cap});
        out_arc_id = unique_arc("mo(" + node + ")");
        onet.arcs.push_back({out_arc_id, mid_node, tail_node, split_cap});
    } else {
        in_arc_id = out_arc_id = unique_arc("m(" + node + ")");
        onet.arcs.push_back({in_arc_id, head_node, tail_node, split_cap});
    }

    for (const auto& [v, cap] : net.storage) {
        if (v == node)
            onet.storage[mid_node] = cap;
        else
            onet.storage[v] = cap;
    }

    out.jobs = inst.jobs;
    if (node_job) {
        Job j = *node_job;
        if (stores && mode == SplitMode::Both) {
            j.arc = in_arc_id;
            out.jobs.push_back(j);
            j.arc = out_arc_id;
            out.jobs.push_back(j);
            out.simultaneous.emplace_back(in_arc_id, out_arc_id);
        } else {
            j.arc = (stores && mode == SplitMode::Outbound) ? out_arc_id : in_arc_id;
            out.jobs.push_back(j);
        }
    }

    const auto problems = validate_instance(out);
    if (!problems.empty())
        throw std::invalid_argument("split_node produced an invalid instance: " + problems.front());
    return out;
}

}  // namespace flowsched::models
