#include "flowsched/exact/shifting.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "flowsched/timegrid.hpp"

namespace flowsched::exact {

ClosureAnalysis closure_and_freedom(const Instance& inst, const Schedule& sched) {
    if (!is_feasible(inst, sched))
        throw std::invalid_argument("closure analysis requires a feasible schedule");

    ClosureAnalysis out;
    SolutionGraph& g = out.graph;
    const int n = static_cast<int>(inst.jobs.size());
    std::vector<std::pair<Rational, Rational>> ends(n);
    for (int j = 0; j < n; ++j) {
        g.arcs.push_back(inst.jobs[j].arc);
        const Rational start = sched.starts.at(inst.jobs[j].arc);
        ends[j] = {start, start + inst.jobs[j].processing};
    }

    g.adjacency.assign(n, {});
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const bool touch = ends[a].first == ends[b].first || ends[a].first == ends[b].second ||
                               ends[a].second == ends[b].first || ends[a].second == ends[b].second;
            if (touch) {
                g.adjacency[a].push_back(b);
                g.adjacency[b].push_back(a);
            }
        }

    // components and hop distances by BFS
    g.component.assign(n, -1);
    g.distance.assign(n, std::vector<int>(n, -1));
    int comp_count = 0;
    for (int start = 0; start < n; ++start) {
        if (g.component[start] < 0) {
            std::deque<int> queue{start};
            g.component[start] = comp_count;
            while (!queue.empty()) {
                const int v = queue.front();
                queue.pop_front();
                for (int w : g.adjacency[v])
                    if (g.component[w] < 0) {
                        g.component[w] = comp_count;
                        queue.push_back(w);
                    }
            }
            ++comp_count;
        }
        // hop distances from `start`
        auto& dist = g.distance[start];
        dist[start] = 0;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int w : g.adjacency[v])
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
    }

    for (int c = 0; c < comp_count; ++c) {
        ClosedSet set;
        std::set<Rational> times;
        set.free = true;
        for (int j = 0; j < n; ++j) {
            if (g.component[j] != c) continue;
            set.jobs.push_back(j);
            times.insert(ends[j].first);
            times.insert(ends[j].second);
            const Job& job = inst.jobs[j];
            if (ends[j].first == job.release || ends[j].first == job.latest_start())
                set.free = false;
        }
        set.times.assign(times.begin(), times.end());
        out.sets.push_back(std::move(set));
    }
    return out;
}

Rational shift_bound(const Instance& inst, const Schedule& sched,
                     const std::vector<std::string>& component_arcs) {
    const auto [grid, outages] = induced_grid(inst, sched);
    (void)outages;
    std::set<Rational> moved;
    for (const auto& arc : component_arcs) {
        const Job* job = inst.job_for(arc);
        if (!job) throw std::invalid_argument("no job on arc '" + arc + "'");
        moved.insert(sched.starts.at(arc));
        moved.insert(sched.starts.at(arc) + job->processing);
    }
    std::set<std::size_t> indices;
    for (std::size_t i = 0; i < grid.points.size(); ++i)
        if (moved.count(grid.points[i])) indices.insert(i);

    bool have = false;
    Rational bound(0);
    auto tighten = [&](const Rational& gap) {
        if (!have || gap < bound) { bound = gap; have = true; }
    };
    for (std::size_t i : indices) {
        if (i > 0 && !indices.count(i - 1)) tighten(grid.points[i] - grid.points[i - 1]);
        if (i + 1 < grid.points.size() && !indices.count(i + 1))
            tighten(grid.points[i + 1] - grid.points[i]);
    }
    if (!have) bound = inst.horizon;  // the component owns every breakpoint
    return bound;
}

Schedule shift_schedule(const Instance& inst, const Schedule& sched,
                        const std::vector<std::string>& component_arcs, const Rational& eps) {
    const Rational bound = shift_bound(inst, sched, component_arcs);
    if (eps.abs() > bound)
        throw std::invalid_argument("shift " + eps.str() + " exceeds the structural bound " +
                                    bound.str());
    Schedule out = sched;
    for (const auto& arc : component_arcs) {
        const Job* job = inst.job_for(arc);
        if (!job) throw std::invalid_argument("no job on arc '" + arc + "'");
        const Rational moved = sched.starts.at(arc) + eps;
        if (moved < job->release || moved > job->latest_start())
            throw std::invalid_argument("shift pushes the job on '" + arc +
                                        "' outside its window");
        out.starts[arc] = moved;
    }
    return out;
}

}  // namespace flowsched::exact
