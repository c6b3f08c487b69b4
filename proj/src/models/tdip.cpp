#include "flowsched/models/tdip.hpp"

#include <algorithm>
#include <stdexcept>

#include "flowsched/evaluator.hpp"

namespace flowsched::models {

using namespace milp;

namespace {

std::string vn(const char* role, const std::string& key, int i) {
    return std::string(role) + "(" + key + "," + std::to_string(i) + ")";
}

// processing time of job a inside interval i when it starts at time t
Rational processed_in(const Job& job, const Discretization& g, int i, const Rational& t) {
    if (t < g.upper(i) && t + job.processing > g.lower(i))
        return min(g.upper(i), t + job.processing) - max(t, g.lower(i));
    return Rational(0);
}

MilpModel build_tdip_variant(const Instance& inst, const Discretization& grid, bool lower_bound) {
    const auto bad = validate_instance(inst);
    if (!bad.empty()) throw std::invalid_argument("build_tdip: invalid instance: " + bad.front());
    if (lower_bound && !is_conformal(inst, grid))
        throw std::invalid_argument("build_tdip_lb requires a conformal discretization");

    const Network& net = inst.network;
    const int n = grid.intervals();
    const IntervalSets sets(inst, grid,
                            lower_bound ? SetVariant::ConformalLower : SetVariant::UpperBound);

    MilpModel m;
    std::map<std::string, std::vector<int>> x, y, z;
    for (const auto& arc : net.arcs) {
        auto& xa = x[arc.id];
        xa.resize(n + 1, -1);
        for (int i = 1; i <= n; ++i)
            xa[i] = m.add_continuous(vn("x", arc.id, i), Rational(0),
                                     grid.length(i) * arc.capacity, {"x", arc.id, i});
    }
    std::map<std::string, std::vector<int>> xs;
    for (const auto& [v, cap] : net.storage) {
        auto& xv = xs[v];
        xv.resize(n + 1, -1);
        for (int i = 0; i <= n; ++i) {
            const bool boundary = (i == 0 || i == n);
            xv[i] = m.add_continuous(vn("xs", v, i), Rational(0), boundary ? Rational(0) : cap,
                                     {"xs", v, i});
        }
    }
    for (const auto& job : inst.jobs) {
        const auto& js = sets.job(job.arc);
        auto& ya = y[job.arc];
        auto& za = z[job.arc];
        ya.resize(n + 1, -1);
        za.resize(n + 1, -1);
        if (js.startable.empty())
            throw std::logic_error("job on '" + job.arc + "' has no startable interval");
        for (int i : js.startable) ya[i] = m.add_binary(vn("y", job.arc, i), {"y", job.arc, i});
        for (int i : js.touchable) {
            if (lower_bound)
                za[i] = m.add_binary(vn("z", job.arc, i), {"z", job.arc, i});
            else
                za[i] = m.add_variable(vn("z", job.arc, i), VarKind::Continuous, Rational(0),
                                       Rational(1), {"z", job.arc, i});
        }
    }

    for (const auto& job : inst.jobs) {
        const auto& js = sets.job(job.arc);
        const auto& ya = y[job.arc];
        const auto& za = z[job.arc];
        const Rational u = net.arc(job.arc)->capacity;

        std::vector<LinearTerm> once;
        for (int i : js.startable) once.push_back({ya[i], Rational(1)});
        m.add_constraint(vn("once", job.arc, 0), std::move(once), ConstraintSense::Equal,
                         Rational(1));

        std::vector<LinearTerm> work;
        for (int i : js.touchable) {
            const Rational len = grid.length(i);
            // per-interval availability of the job window
            m.add_constraint(vn("avail", job.arc, i), {{za[i], len}}, ConstraintSense::LessEq,
                             min(grid.upper(i), job.deadline) - max(grid.lower(i), job.release));
            work.push_back({za[i], len});
            // arc capacity with processing shutoff
            m.add_constraint(vn("cap", job.arc, i),
                             {{x[job.arc][i], Rational(1)}, {za[i], len * u}},
                             ConstraintSense::LessEq, len * u);
        }
        m.add_constraint(vn("work", job.arc, 0), std::move(work), ConstraintSense::Equal,
                         job.processing);

        for (int i : js.startable) {
            std::vector<LinearTerm> finish{{ya[i], -job.processing}};
            for (int k : js.affected.at(i)) finish.push_back({za[k], grid.length(k)});
            m.add_constraint(vn("finish", job.arc, i), std::move(finish),
                             ConstraintSense::GreaterEq, Rational(0));
        }

        for (int i : js.touchable) {
            const auto& covering = js.covering.at(i);
            if (lower_bound) {
                std::vector<LinearTerm> link{{za[i], Rational(1)}};
                for (int k : covering) link.push_back({ya[k], Rational(-1)});
                m.add_constraint(vn("link", job.arc, i), std::move(link), ConstraintSense::Equal,
                                 Rational(0));
            } else {
                std::vector<LinearTerm> hi{{za[i], grid.length(i)}};
                std::vector<LinearTerm> lo{{za[i], grid.length(i)}};
                for (int k : covering) {
                    hi.push_back({ya[k], -sets.mu_upper(job, k, i)});
                    lo.push_back({ya[k], -sets.mu_lower(job, k, i)});
                }
                m.add_constraint(vn("zhi", job.arc, i), std::move(hi), ConstraintSense::LessEq,
                                 Rational(0));
                m.add_constraint(vn("zlo", job.arc, i), std::move(lo), ConstraintSense::GreaterEq,
                                 Rational(0));
            }
        }
    }

    for (const auto& v : net.nodes) {
        if (v == net.source || v == net.sink) continue;
        const bool stores = net.storage.count(v) > 0;
        for (int i = 1; i <= n; ++i) {
            std::vector<LinearTerm> terms;
            for (const Arc* a : net.out_arcs(v)) terms.push_back({x[a->id][i], Rational(1)});
            for (const Arc* a : net.in_arcs(v)) terms.push_back({x[a->id][i], Rational(-1)});
            if (stores) {
                terms.push_back({xs[v][i], Rational(1)});
                terms.push_back({xs[v][i - 1], Rational(-1)});
            }
            m.add_constraint(vn("cons", v, i), std::move(terms), ConstraintSense::Equal,
                             Rational(0));
        }
    }

    // simultaneous-processing links from node splitting
    for (const auto& [a1, a2] : inst.simultaneous) {
        const auto& t1 = sets.job(a1).touchable;
        const auto& t2 = sets.job(a2).touchable;
        for (int i = 1; i <= n; ++i) {
            const bool in1 = std::binary_search(t1.begin(), t1.end(), i);
            const bool in2 = std::binary_search(t2.begin(), t2.end(), i);
            if (!in1 && !in2) continue;
            std::vector<LinearTerm> link;
            if (in1) link.push_back({z[a1][i], Rational(1)});
            if (in2) link.push_back({z[a2][i], Rational(-1)});
            m.add_constraint(vn("same", a1 + "&" + a2, i), std::move(link), ConstraintSense::Equal,
                             Rational(0));
        }
    }

    std::vector<LinearTerm> obj;
    for (const Arc* a : net.out_arcs(net.source))
        for (int i = 1; i <= n; ++i) obj.push_back({x[a->id][i], Rational(1)});
    for (const Arc* a : net.in_arcs(net.source))
        for (int i = 1; i <= n; ++i) obj.push_back({x[a->id][i], Rational(-1)});
    m.set_objective(ObjectiveSense::Maximize, std::move(obj));
    return m;
}

}  // namespace

MilpModel build_tdip(const Instance& inst, const Discretization& grid) {
    return build_tdip_variant(inst, grid, false);
}

MilpModel build_tdip_lb(const Instance& inst, const Discretization& grid) {
    return build_tdip_variant(inst, grid, true);
}

Schedule extract_schedule_tdip_lb(const MilpModel& model, const Instance& inst,
                                  const Discretization& grid,
                                  const std::vector<Rational>& assignment) {
    Schedule sched;
    for (const auto& job : inst.jobs) {
        bool found = false;
        for (int i = 1; i <= grid.intervals() && !found; ++i) {
            const int yi = model.var_index(vn("y", job.arc, i));
            if (yi < 0 || assignment[yi] != Rational(1)) continue;
            sched.starts[job.arc] = grid.lower(i);
            found = true;
        }
        if (!found) throw std::runtime_error("assignment has no start indicator for '" + job.arc + "'");
    }
    return sched;
}

ZVector extract_zvector(const MilpModel& model, const Instance& inst, const Discretization& grid,
                        const std::vector<Rational>& assignment) {
    const IntervalSets sets(inst, grid, SetVariant::UpperBound);
    ZVector zv;
    zv.grid = grid;
    for (const auto& job : inst.jobs) {
        auto& row = zv.entries[job.arc];
        for (int i : sets.job(job.arc).touchable) {
            const int zi = model.var_index(vn("z", job.arc, i));
            if (zi < 0) throw std::invalid_argument("assignment lacks z(" + job.arc + ")");
            row[i] = min(max(assignment[zi], Rational(0)), Rational(1));
        }
    }
    return zv;
}

std::vector<Rational> embed_schedule_tdip(const MilpModel& model, const Instance& inst,
                                          const Discretization& grid, const Schedule& sched) {
    if (!is_feasible(inst, sched))
        throw std::invalid_argument("embed_schedule_tdip requires a feasible schedule");
    const int n = grid.intervals();
    std::vector<Rational> a(model.num_variables(), Rational(0));
    auto set = [&](const std::string& name, const Rational& val) {
        const int idx = model.var_index(name);
        if (idx >= 0) a[idx] = val;
    };

    for (const auto& job : inst.jobs) {
        const Rational start = sched.starts.at(job.arc);
        for (int i = 1; i <= n; ++i) {
            if (grid.lower(i) <= start && start < grid.upper(i)) set(vn("y", job.arc, i), Rational(1));
            const Rational l = processed_in(job, grid, i, start);
            if (!l.is_zero()) set(vn("z", job.arc, i), l / grid.length(i));
        }
    }

    // aggregate the evaluation flows onto the model grid: per-interval rates
    // integrate to flows, storage levels interpolate linearly
    const auto [igrid, outages] = induced_grid(inst, sched);
    const auto flow = evaluate_schedule(inst, sched);
    const int ni = igrid.intervals();
    for (const auto& arc : inst.network.arcs) {
        for (int i = 1; i <= n; ++i) {
            Rational total(0);
            for (int j = 1; j <= ni; ++j) {
                const Rational lo = max(grid.lower(i), igrid.lower(j));
                const Rational hi = min(grid.upper(i), igrid.upper(j));
                if (hi <= lo) continue;
                auto it = flow.arc_flow.find({arc.id, j});
                if (it == flow.arc_flow.end()) continue;
                total += it->second * (hi - lo) / igrid.length(j);
            }
            if (!total.is_zero()) set(vn("x", arc.id, i), total);
        }
    }
    for (const auto& [v, cap] : inst.network.storage) {
        (void)cap;
        auto level_at = [&](const Rational& tau) {
            auto level = [&](int j) {  // storage level at induced breakpoint j
                if (j <= 0 || j >= ni) return Rational(0);
                auto it = flow.storage_level.find({v, j});
                return it == flow.storage_level.end() ? Rational(0) : it->second;
            };
            for (int j = 1; j <= ni; ++j) {
                if (tau > igrid.upper(j)) continue;
                return level(j - 1) +
                       (tau - igrid.lower(j)) * (level(j) - level(j - 1)) / igrid.length(j);
            }
            return Rational(0);
        };
        for (int i = 1; i <= n - 1; ++i) set(vn("xs", v, i), level_at(grid.points[i]));
    }
    return a;
}

}  // namespace flowsched::models
