#include "flowsched/milp/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <set>
#include <stdexcept>

#include "flowsched/milp/simplex.hpp"

namespace flowsched::milp {

namespace {

// snapshot sharing guards: very large tableaus and deep trees fall back to
// fresh solves instead of holding copies alive
constexpr std::size_t kShareCellLimit = 400000;
constexpr int kShareCountLimit = 64;

std::atomic<int> live_snapshots{0};

struct SharedTableau {
    SimplexTableau tableau;
    explicit SharedTableau(SimplexTableau t) : tableau(std::move(t)) { ++live_snapshots; }
    ~SharedTableau() { --live_snapshots; }
};

struct Node {
    long id = 0;
    std::optional<Rational> bound;  // parent LP bound; root has none
    std::shared_ptr<SharedTableau> parent;
    std::vector<std::pair<int, int>> fixes;  // (binary var, value) path from root
};

struct NodeOrder {
    bool maximize;
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound && b.bound && *a.bound != *b.bound)
            return maximize ? *a.bound > *b.bound : *a.bound < *b.bound;
        if (a.bound.has_value() != b.bound.has_value()) return !a.bound.has_value();
        return a.id < b.id;
    }
};

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

MilpResult solve_lp(const MilpModel& model) {
    const auto t0 = std::chrono::steady_clock::now();
    SimplexTableau tableau(model);
    const SolveStatus st = tableau.solve_from_scratch();
    MilpResult result;
    result.status = st;
    result.elapsed_seconds = elapsed_since(t0);
    if (st == SolveStatus::Optimal) {
        result.incumbent = tableau.solution();
        result.incumbent_value = tableau.objective_value();
        result.best_bound = result.incumbent_value;
    }
    return result;
}

std::vector<std::string> check_start(const MilpModel& model,
                                     const std::vector<Rational>& assignment) {
    return model.violations(assignment);
}

MilpResult solve_milp(const MilpModel& model, const MilpLimits& limits,
                      const SnapshotSpec& snapshots,
                      const std::optional<std::vector<Rational>>& warm_start) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool maximize = model.objective_sense() == ObjectiveSense::Maximize;
    const auto binaries = model.binary_indices();
    auto better = [&](const Rational& a, const Rational& b) { return maximize ? a > b : a < b; };

    MilpResult result;
    if (warm_start) {
        auto bad = check_start(model, *warm_start);
        if (!bad.empty()) {
            std::string msg = "warm start rejected:";
            for (const auto& b : bad) msg += "\n  - " + b;
            throw std::invalid_argument(msg);
        }
        result.incumbent = *warm_start;
        result.incumbent_value = model.objective_value(*warm_start);
    }

    std::set<Node, NodeOrder> open{NodeOrder{maximize}};
    long next_id = 0;
    open.insert(Node{next_id++, std::nullopt, nullptr, {}});

    std::optional<std::vector<Rational>> last_lp;
    auto open_bound = [&]() -> std::optional<Rational> {
        // weakest bound over the open subtrees and the incumbent; nullopt when
        // an open node has no bound yet (nothing proved)
        std::optional<Rational> b = result.incumbent_value;
        for (const auto& node : open) {
            if (!node.bound) return std::nullopt;
            if (!b || better(*node.bound, *b)) b = node.bound;
        }
        return b;
    };

    std::vector<std::pair<long, bool>> node_marks;    // (mark, fired)
    std::vector<std::pair<double, bool>> time_marks;  // (mark, fired)
    for (long n : snapshots.at_nodes) node_marks.push_back({n, false});
    for (double s : snapshots.at_seconds) time_marks.push_back({s, false});
    auto record_snapshot = [&](const std::string& trigger) {
        Snapshot snap;
        snap.at_node = result.node_count;
        snap.at_seconds = elapsed_since(t0);
        snap.trigger = trigger;
        snap.best_bound_lp = last_lp;
        snap.incumbent = result.incumbent;
        result.snapshots.push_back(std::move(snap));
    };
    auto fire_due_snapshots = [&]() {
        for (auto& [mark, fired] : node_marks)
            if (!fired && result.node_count >= mark) {
                fired = true;
                record_snapshot("nodes:" + std::to_string(mark));
            }
        for (auto& [mark, fired] : time_marks)
            if (!fired && elapsed_since(t0) >= mark) {
                fired = true;
                record_snapshot("seconds:" + std::to_string(mark));
            }
    };

    bool hit_limit = false;
    while (!open.empty()) {
        fire_due_snapshots();
        if (limits.max_nodes && result.node_count >= *limits.max_nodes) { hit_limit = true; break; }
        if (limits.time_seconds && elapsed_since(t0) >= *limits.time_seconds) { hit_limit = true; break; }

        Node node = *open.begin();
        open.erase(open.begin());
        if (node.bound && result.incumbent_value && !better(*node.bound, *result.incumbent_value))
            continue;  // cannot improve on the incumbent

        SolveStatus st;
        std::unique_ptr<SimplexTableau> tableau;
        if (node.parent) {
            // the last consumer of a snapshot can take it by move
            if (node.parent.use_count() == 1)
                tableau = std::make_unique<SimplexTableau>(std::move(node.parent->tableau));
            else
                tableau = std::make_unique<SimplexTableau>(node.parent->tableau);
            node.parent.reset();
            const auto& [var, val] = node.fixes.back();
            tableau->set_var_bounds(var, Rational(val), Rational(val));
            st = tableau->reoptimize_dual();
        } else {
            tableau = std::make_unique<SimplexTableau>(model);
            for (const auto& [var, val] : node.fixes)
                tableau->set_var_bounds(var, Rational(val), Rational(val));
            st = tableau->solve_from_scratch();
        }
        result.node_count += 1;

        if (st == SolveStatus::Unbounded) {
            result.status = SolveStatus::Unbounded;
            result.elapsed_seconds = elapsed_since(t0);
            return result;
        }
        if (st == SolveStatus::Infeasible) continue;

        const Rational lp_value = tableau->objective_value();
        const auto lp_point = tableau->solution();
        last_lp = lp_point;
        if (result.incumbent_value && !better(lp_value, *result.incumbent_value)) continue;

        // most fractional binary, ties by variable order
        int branch_var = -1;
        Rational best_score;
        const Rational half(1, 2);
        for (int var : binaries) {
            const Rational& x = lp_point[var];
            if (x == Rational(0) || x == Rational(1)) continue;
            const Rational score = (x - half).abs();
            if (branch_var < 0 || score < best_score) { branch_var = var; best_score = score; }
        }

        if (branch_var < 0) {
            // integral on all binaries: candidate incumbent
            if (!result.incumbent_value || better(lp_value, *result.incumbent_value)) {
                result.incumbent = lp_point;
                result.incumbent_value = lp_value;
            }
            continue;
        }

        std::shared_ptr<SharedTableau> share;
        if (tableau->cell_count() <= kShareCellLimit && live_snapshots.load() < kShareCountLimit)
            share = std::make_shared<SharedTableau>(std::move(*tableau));
        for (int val : {0, 1}) {
            Node child;
            child.id = next_id++;
            child.bound = lp_value;
            child.parent = share;
            child.fixes = node.fixes;
            child.fixes.emplace_back(branch_var, val);
            open.insert(std::move(child));
        }
    }

    result.elapsed_seconds = elapsed_since(t0);
    result.best_bound = open_bound();
    // fire any remaining snapshot marks with the final state
    for (auto& [mark, fired] : node_marks)
        if (!fired) { fired = true; record_snapshot("nodes:" + std::to_string(mark) + ":final"); }
    for (auto& [mark, fired] : time_marks)
        if (!fired) { fired = true; record_snapshot("seconds:" + std::to_string(mark) + ":final"); }

    if (!hit_limit) {
        if (result.incumbent) {
            result.status = SolveStatus::Optimal;
            result.best_bound = result.incumbent_value;
        } else {
            result.status = SolveStatus::Infeasible;
        }
    } else {
        result.status = result.incumbent ? SolveStatus::FeasibleAtLimit : SolveStatus::LimitNoIncumbent;
    }
    return result;
}

}  // namespace flowsched::milp
