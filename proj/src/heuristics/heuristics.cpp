#include "flowsched/heuristics/heuristics.hpp"

#include <algorithm>
#include <stdexcept>

#include "flowsched/evaluator.hpp"
#include "flowsched/milp/solver.hpp"
#include "flowsched/models/ctip.hpp"
#include "flowsched/models/interval_sets.hpp"

namespace flowsched::heur {

namespace {

using models::IntervalSets;
using models::SetVariant;

Rational overlap(const Job& job, const Discretization& g, int i, const Rational& t) {
    if (t < g.upper(i) && t + job.processing > g.lower(i))
        return min(g.upper(i), t + job.processing) - max(t, g.lower(i));
    return Rational(0);
}

Rational z_entry(const ZVector& z, const std::string& arc, int i) {
    auto row = z.entries.find(arc);
    if (row == z.entries.end()) return Rational(0);
    auto it = row->second.find(i);
    return it == row->second.end() ? Rational(0) : it->second;
}

// l1 distance between the schedule-induced processing and the z mass
Rational deviation(const Job& job, const Discretization& g, const std::vector<int>& touchable,
                   const ZVector& z, const Rational& t) {
    Rational f(0);
    for (int i : touchable)
        f += (g.length(i) * z_entry(z, job.arc, i) - overlap(job, g, i, t)).abs();
    return f;
}

}  // namespace

ZVector induced_xi(const Instance& inst, const Discretization& grid, const Schedule& sched) {
    if (!is_feasible(inst, sched))
        throw std::invalid_argument("induced_xi requires a feasible schedule");
    const IntervalSets sets(inst, grid, SetVariant::UpperBound);
    ZVector z;
    z.grid = grid;
    for (const auto& job : inst.jobs) {
        auto& row = z.entries[job.arc];
        const Rational start = sched.starts.at(job.arc);
        for (int i : sets.job(job.arc).touchable)
            row[i] = overlap(job, grid, i, start) / grid.length(i);
    }
    return z;
}

Schedule projection_heuristic(const Instance& inst, const Discretization& grid, const ZVector& z) {
    const IntervalSets sets(inst, grid, SetVariant::UpperBound);
    Schedule out;
    for (const auto& job : inst.jobs) {
        const auto& js = sets.job(job.arc);
        std::optional<Rational> best_f;
        Rational best_t;

        auto consider = [&](const Rational& t) {
            if (t < job.release || t > job.latest_start()) return;
            const Rational f = deviation(job, grid, js.touchable, z, t);
            if (!best_f || f < *best_f || (f == *best_f && t < best_t)) {
                best_f = f;
                best_t = t;
            }
        };

        for (int i : js.startable) {
            for (int k : js.completion.at(i)) {
                if (k == i) {
                    // start and end inside one interval: the deviation is flat,
                    // the earliest feasible start represents the cell
                    const Rational t = max(grid.lower(i), job.release);
                    if (t + job.processing <= grid.upper(i)) consider(t);
                    continue;
                }
                // processing in the start interval (alpha) and in the completion
                // interval (beta) with alpha + beta fixed by the span between
                const Rational span = job.processing - (grid.lower(k) - grid.upper(i));
                Rational alpha_lo = max(Rational(0), span - grid.length(k));
                alpha_lo = max(alpha_lo, grid.upper(i) - job.latest_start());
                Rational alpha_hi = min(grid.length(i), span);
                alpha_hi = min(alpha_hi, grid.upper(i) - job.release);
                if (alpha_lo > alpha_hi) continue;
                const Rational ci = grid.length(i) * z_entry(z, job.arc, i);
                const Rational ck = grid.length(k) * z_entry(z, job.arc, k);
                for (Rational alpha : {ci, span - ck, alpha_lo, alpha_hi}) {
                    alpha = min(max(alpha, alpha_lo), alpha_hi);
                    consider(grid.upper(i) - alpha);
                }
            }
        }
        if (!best_f) throw std::logic_error("no feasible start candidate for '" + job.arc + "'");
        out.starts[job.arc] = best_t;
    }
    return out;
}

Schedule com_heuristic(const Instance& inst, const Discretization& grid, const ZVector& z) {
    const IntervalSets sets(inst, grid, SetVariant::UpperBound);
    Schedule out;
    for (const auto& job : inst.jobs) {
        const auto& touchable = sets.job(job.arc).touchable;
        Rational mass(0);
        for (int i : touchable) mass += grid.length(i) * z_entry(z, job.arc, i);
        if (mass.is_zero())
            throw std::invalid_argument("job on '" + job.arc + "' has zero z mass");
        const Rational scale = job.processing / mass;  // enforce total mass p

        const Rational half = job.processing / Rational(2);
        Rational cum(0);
        Rational midpoint;
        bool found = false;
        for (int i : touchable) {
            const Rational chunk = grid.length(i) * z_entry(z, job.arc, i) * scale;
            if (cum + chunk > half) {
                midpoint = grid.lower(i) + (half - cum) / (z_entry(z, job.arc, i) * scale);
                found = true;
                break;
            }
            cum += chunk;
        }
        if (!found) throw std::logic_error("mass walk failed for '" + job.arc + "'");
        const Rational raw = midpoint - half;
        out.starts[job.arc] = min(max(raw, job.release), job.latest_start());
    }
    return out;
}

PipelineResult heuristic_pipeline(const Instance& inst, const Discretization& grid,
                                  const PipelineConfig& config) {
    using namespace milp;
    const MilpModel model = models::build_tdip(inst, grid);

    PipelineResult result;
    auto apply = [&](const std::string& source, const std::string& label_suffix,
                     const std::optional<std::vector<Rational>>& assignment) {
        for (const bool projection : {false, true}) {
            HeuristicRun run;
            run.source = source;
            run.label = (projection ? "Proj" : "CoM") + label_suffix;
            if (!assignment) {
                run.error = "no " + source + " point available";
                result.runs.push_back(std::move(run));
                continue;
            }
            try {
                const ZVector z = models::extract_zvector(model, inst, grid, *assignment);
                const Schedule s = projection ? projection_heuristic(inst, grid, z)
                                              : com_heuristic(inst, grid, z);
                run.value = evaluate_schedule(inst, s).value;
                run.schedule = s;
                if (!result.best_value || *run.value > *result.best_value) {
                    result.best_value = run.value;
                    result.best_schedule = s;
                }
            } catch (const std::exception& e) {
                run.error = e.what();
            }
            result.runs.push_back(std::move(run));
        }
    };

    const MilpResult root = solve_lp(model);
    apply("LP-root", "", root.incumbent);

    MilpLimits limits;
    limits.max_nodes = config.node_limit;
    limits.time_seconds = config.time_limit;
    SnapshotSpec snaps;
    std::string tau;
    if (config.snapshot_nodes) {
        snaps.at_nodes = {*config.snapshot_nodes};
        tau = std::to_string(*config.snapshot_nodes);
    }
    if (config.snapshot_seconds) {
        snaps.at_seconds = {*config.snapshot_seconds};
        tau = std::to_string(static_cast<long>(*config.snapshot_seconds));
    }

    std::optional<std::vector<Rational>> warm;
    if (!inst.jobs.empty()) {
        const auto start = models::embed_schedule_tdip(model, inst, grid,
                                                       models::midpoint_schedule(inst));
        if (check_start(model, start).empty()) warm = start;
    }
    const MilpResult solved = solve_milp(model, limits, snaps, warm);

    std::optional<std::vector<Rational>> snap_lp, snap_incumbent;
    if (!solved.snapshots.empty()) {
        snap_lp = solved.snapshots.front().best_bound_lp;
        snap_incumbent = solved.snapshots.front().incumbent;
    }
    apply("LP-snapshot", "-LP" + tau, snap_lp);
    apply("incumbent-snapshot", "-FS" + tau, snap_incumbent);

    if (inst.jobs.empty()) {
        result.best_value = inst.horizon * static_max_flow(inst, {});
        result.best_schedule = Schedule{};
    }
    return result;
}

}  // namespace flowsched::heur
