#include "flowsched/models/ctip.hpp"

#include <stdexcept>

#include "flowsched/evaluator.hpp"
#include "flowsched/timegrid.hpp"

namespace flowsched::models {

using namespace milp;

namespace {

std::string tname(int i) { return "t(" + std::to_string(i) + ")"; }
std::string vn(const char* role, const std::string& arc, int i) {
    return std::string(role) + "(" + arc + "," + std::to_string(i) + ")";
}

}  // namespace

MilpModel build_ctip(const Instance& inst) {
    const auto bad = validate_instance(inst);
    if (!bad.empty()) throw std::invalid_argument("build_ctip: invalid instance: " + bad.front());

    const Network& net = inst.network;
    const Rational T = inst.horizon;
    const int M = 2 * static_cast<int>(inst.jobs.size()) + 1;

    MilpModel m;
    // breakpoints; t_0 and t_M pinned to the horizon ends
    std::vector<int> t(M + 1);
    for (int i = 0; i <= M; ++i) {
        const bool pinned = (i == 0 || i == M);
        const Rational fix = i == 0 ? Rational(0) : T;
        t[i] = m.add_continuous(tname(i), pinned ? fix : Rational(0), pinned ? fix : T,
                                {"t", "", i});
    }
    for (int i = 1; i <= M; ++i)
        m.add_constraint("order(" + std::to_string(i) + ")",
                         {{t[i], Rational(1)}, {t[i - 1], Rational(-1)}},
                         ConstraintSense::GreaterEq, Rational(0));

    std::map<std::string, std::vector<int>> w, z, dshut, dopen;
    for (const auto& job : inst.jobs) {
        auto& wj = w[job.arc];
        auto& zj = z[job.arc];
        auto& ds = dshut[job.arc];
        auto& dp = dopen[job.arc];
        wj.resize(M + 1, -1);
        zj.resize(M + 1, -1);
        ds.resize(M + 1, -1);
        dp.resize(M + 1, -1);
        for (int i = 1; i <= M; ++i) {
            wj[i] = m.add_binary(vn("w", job.arc, i), {"w", job.arc, i});
            zj[i] = m.add_binary(vn("z", job.arc, i), {"z", job.arc, i});
            ds[i] = m.add_continuous(vn("ds", job.arc, i), Rational(0), job.processing,
                                     {"delta", job.arc, i});
            dp[i] = m.add_continuous(vn("do", job.arc, i), Rational(0), T - job.processing,
                                     {"deltabar", job.arc, i});
        }
    }

    std::map<std::string, std::vector<int>> x;  // all arcs
    for (const auto& arc : net.arcs) {
        auto& xa = x[arc.id];
        xa.resize(M + 1, -1);
        for (int i = 1; i <= M; ++i)
            xa[i] = m.add_continuous(vn("x", arc.id, i), Rational(0), std::nullopt,
                                     {"x", arc.id, i});
    }
    std::map<std::string, std::vector<int>> xs;  // storage levels
    for (const auto& [v, cap] : net.storage) {
        auto& xv = xs[v];
        xv.resize(M + 1, -1);
        for (int i = 0; i <= M; ++i) {
            const bool boundary = (i == 0 || i == M);
            xv[i] = m.add_continuous(vn("xs", v, i), Rational(0), boundary ? Rational(0) : cap,
                                     {"xs", v, i});
        }
    }

    for (const auto& job : inst.jobs) {
        const auto& wj = w[job.arc];
        const auto& zj = z[job.arc];
        const auto& ds = dshut[job.arc];
        const auto& dp = dopen[job.arc];
        const Rational u = net.arc(job.arc)->capacity;

        std::vector<LinearTerm> zsum, dsum;
        for (int i = 1; i <= M; ++i) {
            // release / deadline links
            m.add_constraint(vn("rel", job.arc, i),
                             {{t[i - 1], Rational(1)}, {wj[i], -job.release}},
                             ConstraintSense::GreaterEq, Rational(0));
            m.add_constraint(vn("dead", job.arc, i),
                             {{t[i], Rational(1)}, {wj[i], T - job.deadline}},
                             ConstraintSense::LessEq, T);
            // start indicator covers every rising edge of w (w_{a0} = 0)
            std::vector<LinearTerm> edge{{zj[i], Rational(1)}, {wj[i], Rational(-1)}};
            if (i >= 2) edge.push_back({wj[i - 1], Rational(1)});
            m.add_constraint(vn("edge", job.arc, i), std::move(edge), ConstraintSense::GreaterEq,
                             Rational(0));
            // interval length split into shut and open portions
            m.add_constraint(vn("split", job.arc, i),
                             {{ds[i], Rational(1)},
                              {dp[i], Rational(1)},
                              {t[i], Rational(-1)},
                              {t[i - 1], Rational(1)}},
                             ConstraintSense::Equal, Rational(0));
            m.add_constraint(vn("shut", job.arc, i),
                             {{ds[i], Rational(1)}, {wj[i], -job.processing}},
                             ConstraintSense::LessEq, Rational(0));
            m.add_constraint(vn("open", job.arc, i),
                             {{dp[i], Rational(1)}, {wj[i], T - job.processing}},
                             ConstraintSense::LessEq, T - job.processing);
            // flow shutoff
            m.add_constraint(vn("cap", job.arc, i), {{x[job.arc][i], Rational(1)}, {dp[i], -u}},
                             ConstraintSense::LessEq, Rational(0));
            zsum.push_back({zj[i], Rational(1)});
            dsum.push_back({ds[i], Rational(1)});
        }
        m.add_constraint(vn("once", job.arc, 0), std::move(zsum), ConstraintSense::Equal,
                         Rational(1));
        m.add_constraint(vn("duration", job.arc, 0), std::move(dsum), ConstraintSense::Equal,
                         job.processing);
    }

    // capacities of arcs without jobs scale with the interval length
    for (const auto& arc : net.arcs) {
        if (inst.job_for(arc.id)) continue;
        for (int i = 1; i <= M; ++i)
            m.add_constraint(vn("cap", arc.id, i),
                             {{x[arc.id][i], Rational(1)},
                              {t[i], -arc.capacity},
                              {t[i - 1], arc.capacity}},
                             ConstraintSense::LessEq, Rational(0));
    }

    // flow conservation
    for (const auto& v : net.nodes) {
        if (v == net.source || v == net.sink) continue;
        const bool stores = net.storage.count(v) > 0;
        for (int i = 1; i <= M; ++i) {
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
    for (const auto& [a1, a2] : inst.simultaneous)
        for (int i = 1; i <= M; ++i)
            m.add_constraint(vn("same", a1 + "&" + a2, i),
                             {{w[a1][i], Rational(1)}, {w[a2][i], Rational(-1)}},
                             ConstraintSense::Equal, Rational(0));

    std::vector<LinearTerm> obj;
    for (const Arc* a : net.out_arcs(net.source))
        for (int i = 1; i <= M; ++i) obj.push_back({x[a->id][i], Rational(1)});
    for (const Arc* a : net.in_arcs(net.source))
        for (int i = 1; i <= M; ++i) obj.push_back({x[a->id][i], Rational(-1)});
    m.set_objective(ObjectiveSense::Maximize, std::move(obj));
    return m;
}

Schedule extract_schedule_ctip(const MilpModel& model, const Instance& inst,
                               const std::vector<Rational>& assignment) {
    const int M = 2 * static_cast<int>(inst.jobs.size()) + 1;
    Schedule sched;
    for (const auto& job : inst.jobs) {
        bool found = false;
        for (int i = 1; i <= M && !found; ++i) {
            const int wi = model.var_index(vn("w", job.arc, i));
            if (wi < 0 || assignment[wi] != Rational(1)) continue;
            sched.starts[job.arc] = assignment[model.var_index(tname(i - 1))];
            found = true;
        }
        if (!found)
            throw std::runtime_error("assignment has no maintenance interval for '" + job.arc + "'");
    }
    return sched;
}

std::vector<Rational> embed_schedule_ctip(const MilpModel& model, const Instance& inst,
                                          const Schedule& sched) {
    const int M = 2 * static_cast<int>(inst.jobs.size()) + 1;
    const auto [grid, outages] = induced_grid(inst, sched);
    const auto flow = evaluate_schedule(inst, sched);
    const int n = grid.intervals();

    std::vector<Rational> a(model.num_variables(), Rational(0));
    auto set = [&](const std::string& name, const Rational& val) {
        const int idx = model.var_index(name);
        if (idx >= 0) a[idx] = val;
    };

    for (int i = 0; i <= M; ++i)
        set(tname(i), i <= n ? grid.points[i] : inst.horizon);

    for (const auto& job : inst.jobs) {
        const auto& shut = outages.intervals.at(job.arc);
        for (int i : shut) set(vn("ds", job.arc, i), grid.length(i));
        for (int i = 1; i <= n; ++i) {
            const bool is_shut = std::find(shut.begin(), shut.end(), i) != shut.end();
            set(vn("w", job.arc, i), Rational(is_shut ? 1 : 0));
            if (!is_shut) set(vn("do", job.arc, i), grid.length(i));
        }
        set(vn("z", job.arc, shut.front()), Rational(1));
    }
    for (const auto& [key, val] : flow.arc_flow) set(vn("x", key.first, key.second), val);
    for (const auto& [key, val] : flow.storage_level) set(vn("xs", key.first, key.second), val);
    return a;
}

Schedule midpoint_schedule(const Instance& inst) {
    Schedule s;
    for (const auto& job : inst.jobs) {
        const Rational mid = ((job.release + job.deadline - job.processing) / Rational(2)).floor();
        s.starts[job.arc] = min(max(mid, job.release), job.latest_start());
    }
    return s;
}

}  // namespace flowsched::models
