#include <doctest.h>

#include "flowsched/evaluator.hpp"
#include "flowsched/generator.hpp"
#include "flowsched/milp/solver.hpp"
#include "flowsched/models/ctip.hpp"
#include "flowsched/models/extensions.hpp"
#include "flowsched/models/interval_sets.hpp"
#include "flowsched/models/tdip.hpp"
#include "support.hpp"

using namespace flowsched;
using namespace flowsched::models;
using testsupport::demo_instance;
using testsupport::halfstep_instance;
using testsupport::sched;

namespace {

const milp::MilpLimits kNoLimits{};

milp::MilpResult solve_ctip(const Instance& inst, const Schedule& warm_sched) {
    const auto model = build_ctip(inst);
    const auto warm = embed_schedule_ctip(model, inst, warm_sched);
    return milp::solve_milp(model, kNoLimits, {}, warm);
}

}  // namespace

TEST_CASE("interval sets on the rd grid of the demo instance") {
    const auto inst = demo_instance(false);
    const Discretization grid{{Rational(0), Rational(1), Rational(3)}};
    const IntervalSets sets(inst, grid, SetVariant::UpperBound);
    const auto& a = sets.job("a");
    CHECK(a.startable == std::vector<int>{1, 2});
    CHECK(a.touchable == std::vector<int>{1, 2});
    CHECK(a.affected.at(1) == std::vector<int>{1, 2});
    const auto& b = sets.job("b");
    CHECK(b.startable == std::vector<int>{1});
    CHECK(b.touchable == std::vector<int>{1});
}

TEST_CASE("interval sets collapse for a window equal to one interval") {
    Instance inst = demo_instance(false);
    inst.jobs[0] = {"a", Rational(0), Rational(1), Rational(1)};  // window = interval 1
    const Discretization grid{{Rational(0), Rational(1), Rational(3)}};
    const IntervalSets sets(inst, grid, SetVariant::UpperBound);
    const auto& a = sets.job("a");
    CHECK(a.startable == std::vector<int>{1});
    CHECK(a.touchable == std::vector<int>{1});
    CHECK(a.affected.at(1) == std::vector<int>{1});
    CHECK(a.covering.at(1) == std::vector<int>{1});
}

TEST_CASE("ctip solves the demo instance both ways") {
    const auto no_store = demo_instance(false);
    const auto r1 = solve_ctip(no_store, midpoint_schedule(no_store));
    REQUIRE(r1.status == milp::SolveStatus::Optimal);
    CHECK(*r1.incumbent_value == Rational(1));
    const auto s1 = extract_schedule_ctip(build_ctip(no_store), no_store, *r1.incumbent);
    CHECK(s1.starts.at("a") == Rational(0));

    const auto store = demo_instance(true);
    const auto r2 = solve_ctip(store, midpoint_schedule(store));
    REQUIRE(r2.status == milp::SolveStatus::Optimal);
    CHECK(*r2.incumbent_value == Rational(2));
    const auto s2 = extract_schedule_ctip(build_ctip(store), store, *r2.incumbent);
    CHECK(s2.starts.at("a") == Rational(1));
}

TEST_CASE("ctip warm start embedding is feasible and exact") {
    for (const bool storage : {false, true}) {
        const auto inst = demo_instance(storage);
        const auto model = build_ctip(inst);
        for (const auto& s : {sched({{"a", Rational(0)}, {"b", Rational(0)}}),
                              sched({{"a", Rational(1)}, {"b", Rational(0)}}),
                              sched({{"a", Rational(1, 2)}, {"b", Rational(0)}})}) {
            const auto warm = embed_schedule_ctip(model, inst, s);
            CHECK(milp::check_start(model, warm).empty());
            CHECK(model.objective_value(warm) == evaluate_schedule(inst, s).value);
        }
    }
}

TEST_CASE("ctip round trip: extracted schedule evaluates to the incumbent") {
    GeneratorParams params;
    params.num_nodes = 3;
    params.num_arcs = 3;
    params.num_jobs = 2;
    params.horizon = 8;
    params.window_min = 3;
    params.window_max = 5;
    params.proc_max = 3;
    params.num_storage = 1;
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const auto inst = generate_instance(seed, params);
        const auto model = build_ctip(inst);
        const auto warm = embed_schedule_ctip(model, inst, midpoint_schedule(inst));
        const auto r = milp::solve_milp(model, kNoLimits, {}, warm);
        REQUIRE(r.status == milp::SolveStatus::Optimal);
        const auto s = extract_schedule_ctip(model, inst, *r.incumbent);
        CHECK(is_feasible(inst, s));
        CHECK(evaluate_schedule(inst, s).value == *r.incumbent_value);
    }
}

TEST_CASE("tdip upper bound on coarse grids") {
    const auto store = demo_instance(true);
    const Discretization rd{{Rational(0), Rational(1), Rational(3)}};
    const auto ub = milp::solve_milp(build_tdip(store, rd));
    REQUIRE(ub.status == milp::SolveStatus::Optimal);
    CHECK(*ub.incumbent_value >= Rational(2));

    const auto inst = halfstep_instance();
    const auto ub2 = milp::solve_milp(build_tdip(inst, release_deadline_grid(inst)));
    REQUIRE(ub2.status == milp::SolveStatus::Optimal);
    CHECK(*ub2.incumbent_value >= Rational(16));
}

TEST_CASE("tdip shuts a whole-horizon job completely") {
    Instance inst;
    inst.horizon = Rational(4);
    inst.network.nodes = {"s", "t"};
    inst.network.source = "s";
    inst.network.sink = "t";
    inst.network.arcs = {{"a", "s", "t", Rational(3)}};
    inst.jobs = {{"a", Rational(0), Rational(4), Rational(4)}};
    const auto r = milp::solve_milp(build_tdip(inst, release_deadline_grid(inst)));
    REQUIRE(r.status == milp::SolveStatus::Optimal);
    CHECK(*r.incumbent_value == Rational(0));
}

TEST_CASE("tdip lb equals the optimum on the no-storage demo with unit grid") {
    const auto inst = demo_instance(false);
    const auto model = build_tdip_lb(inst, unit_grid(inst));
    const auto r = milp::solve_milp(model);
    REQUIRE(r.status == milp::SolveStatus::Optimal);
    CHECK(*r.incumbent_value == Rational(1));
    const auto s = extract_schedule_tdip_lb(model, inst, unit_grid(inst), *r.incumbent);
    CHECK(s.starts.at("a") == Rational(0));
    CHECK(s.starts.at("b") == Rational(0));
    CHECK(evaluate_schedule(inst, s).value == *r.incumbent_value);
}

TEST_CASE("tdip lb rejects non-conformal grids") {
    const auto inst = demo_instance(false);
    const Discretization rd{{Rational(0), Rational(1), Rational(3)}};
    CHECK_THROWS_AS(build_tdip_lb(inst, rd), std::invalid_argument);
}

TEST_CASE("tdip lb on the unit grid misses the fractional optimum") {
    const auto inst = halfstep_instance();
    const auto r = milp::solve_milp(build_tdip_lb(inst, unit_grid(inst)));
    REQUIRE(r.status == milp::SolveStatus::Optimal);
    // brute force over the three integral starts of the movable job
    Rational best(0);
    for (long t = 0; t <= 2; ++t) {
        const auto v = evaluate_schedule(inst, sched({{"a", Rational(t)},
                                                      {"b", Rational(3)},
                                                      {"c", Rational(0)},
                                                      {"d", Rational(0)}}))
                           .value;
        best = max(best, v);
    }
    CHECK(*r.incumbent_value == best);
    CHECK(*r.incumbent_value < Rational(16));
}

TEST_CASE("tdip z extraction stays in range; lb solutions are integral") {
    const auto inst = demo_instance(true);
    const auto grid = unit_grid(inst);
    const auto model = build_tdip_lb(inst, grid);
    const auto r = milp::solve_milp(model);
    REQUIRE(r.status == milp::SolveStatus::Optimal);
    const auto z = extract_zvector(model, inst, grid, *r.incumbent);
    for (const auto& [arc, row] : z.entries)
        for (const auto& [i, v] : row) CHECK((v == Rational(0) || v == Rational(1)));

    const auto lp = milp::solve_lp(build_tdip(inst, release_deadline_grid(inst)));
    REQUIRE(lp.status == milp::SolveStatus::Optimal);
    const auto zlp = extract_zvector(build_tdip(inst, release_deadline_grid(inst)), inst,
                                     release_deadline_grid(inst), *lp.incumbent);
    for (const auto& [arc, row] : zlp.entries)
        for (const auto& [i, v] : row) {
            CHECK(v >= Rational(0));
            CHECK(v <= Rational(1));
        }
}

TEST_CASE("tdip warm start embedding is feasible") {
    const auto inst = halfstep_instance();
    for (const auto& grid : {release_deadline_grid(inst), unit_grid(inst)}) {
        const auto model = build_tdip(inst, grid);
        const auto s = sched({{"a", Rational(3, 2)}, {"b", Rational(3)}, {"c", Rational(0)},
                              {"d", Rational(0)}});
        const auto warm = embed_schedule_tdip(model, inst, grid, s);
        CHECK(milp::check_start(model, warm).empty());
        CHECK(model.objective_value(warm) == Rational(16));
    }
}

TEST_CASE("sandwich: lb <= optimum <= ub <= ub lp on the demo instances") {
    for (const bool storage : {false, true}) {
        const auto inst = demo_instance(storage);
        const auto opt = solve_ctip(inst, midpoint_schedule(inst));
        REQUIRE(opt.status == milp::SolveStatus::Optimal);
        const auto lb = milp::solve_milp(build_tdip_lb(inst, unit_grid(inst)));
        for (const auto& grid : {release_deadline_grid(inst), unit_grid(inst)}) {
            const auto ub = milp::solve_milp(build_tdip(inst, grid));
            const auto ub_lp = milp::solve_lp(build_tdip(inst, grid));
            CHECK(*lb.incumbent_value <= *opt.incumbent_value);
            CHECK(*opt.incumbent_value <= *ub.incumbent_value);
            CHECK(*ub.incumbent_value <= *ub_lp.incumbent_value);
        }
    }
}

TEST_CASE("fixing ctip binaries to a schedule pattern reproduces its value") {
    const auto inst = demo_instance(true);
    const auto model = build_ctip(inst);
    const auto s = sched({{"a", Rational(1, 2)}, {"b", Rational(0)}});
    const auto embedded = embed_schedule_ctip(model, inst, s);
    // pin every binary to the embedded pattern, then re-solve the LP
    milp::MilpModel pinned = model;
    for (int var : model.binary_indices())
        pinned.add_constraint("pin" + std::to_string(var), {{var, Rational(1)}},
                              milp::ConstraintSense::Equal, embedded[var]);
    // also pin the breakpoints: the w pattern alone fixes only the combinatorics
    const auto r = milp::solve_milp(pinned);
    REQUIRE(r.status == milp::SolveStatus::Optimal);
    CHECK(*r.incumbent_value >= evaluate_schedule(inst, s).value);
}

TEST_CASE("precedence in ctip restricts the demo instance") {
    const auto inst = demo_instance(false);
    auto model = add_precedence(build_ctip(inst), ModelKind::Ctip, inst, "a", "b");
    const auto r = milp::solve_milp(model);
    // job a (p=2) cannot finish before b's deadline-forced start at 0
    CHECK(r.status == milp::SolveStatus::Infeasible);
    CHECK_THROWS_AS(add_precedence(build_ctip(inst), ModelKind::Ctip, inst, "a", "a"),
                    std::invalid_argument);
}

TEST_CASE("vacuous tdip precedence keeps the optimum") {
    Instance inst = demo_instance(false);
    inst.jobs[0] = {"a", Rational(0), Rational(1), Rational(1)};
    inst.jobs[1] = {"b", Rational(2), Rational(3), Rational(1)};  // after a by construction
    const auto grid = unit_grid(inst);
    const auto base = milp::solve_milp(build_tdip(inst, grid));
    auto model = add_precedence(build_tdip(inst, grid), ModelKind::Tdip, inst, "a", "b", &grid);
    const auto restricted = milp::solve_milp(model);
    REQUIRE(base.status == milp::SolveStatus::Optimal);
    REQUIRE(restricted.status == milp::SolveStatus::Optimal);
    CHECK(*base.incumbent_value == *restricted.incumbent_value);
}

TEST_CASE("incompatibility rows forbid overlap") {
    const auto inst = demo_instance(false);
    auto model = add_incompatibility(build_ctip(inst), ModelKind::Ctip, inst, {"a", "b"});
    const auto r = milp::solve_milp(model);
    REQUIRE(r.status == milp::SolveStatus::Optimal);
    // the only way to avoid overlap is a at 1 (value 0): (0,0) overlaps
    CHECK(*r.incumbent_value == Rational(0));

    // a limit of |C| changes nothing
    auto loose = add_incompatibility(build_ctip(inst), ModelKind::Ctip, inst, {"a", "b"}, 2);
    CHECK(*milp::solve_milp(loose).incumbent_value == Rational(1));

    CHECK_THROWS_AS(add_incompatibility(build_ctip(inst), ModelKind::Ctip, inst, {"a"}),
                    std::invalid_argument);
}

TEST_CASE("node splitting: capacity, storage chain and terminals") {
    const auto inst = demo_instance(false);
    const auto split = split_node(inst, "v", SplitMode::Inbound);
    const Arc* bridge = split.network.arc("m(v)");
    REQUIRE(bridge != nullptr);
    CHECK(bridge->capacity == Rational(1));  // min(2, 1)
    CHECK(validate_instance(split).empty());

    auto store = demo_instance(true);
    store.jobs.clear();
    const auto chain = split_node(store, "v", SplitMode::Both);
    CHECK(chain.network.storage.size() == 1);
    Schedule empty;
    CHECK(evaluate_schedule(chain, empty).value == evaluate_schedule(store, empty).value);

    CHECK_THROWS_AS(split_node(inst, "s", SplitMode::Inbound), std::invalid_argument);
}

TEST_CASE("node splitting with a both-sides job links the two jobs") {
    auto store = demo_instance(true);
    store.jobs.clear();
    Job node_job{"", Rational(0), Rational(3), Rational(1)};
    const auto split = split_node(store, "v", SplitMode::Both, node_job);
    REQUIRE(split.jobs.size() == 2);
    REQUIRE(split.simultaneous.size() == 1);
    const auto model = build_ctip(split);
    const auto r = milp::solve_milp(model);
    REQUIRE(r.status == milp::SolveStatus::Optimal);
    const auto s = extract_schedule_ctip(model, split, *r.incumbent);
    CHECK(s.starts.at(split.simultaneous[0].first) == s.starts.at(split.simultaneous[0].second));
}
