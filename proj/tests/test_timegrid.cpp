#include <doctest.h>

#include "flowsched/timegrid.hpp"
#include "support.hpp"

using namespace flowsched;
using testsupport::demo_instance;
using testsupport::halfstep_instance;
using testsupport::sched;

namespace {
std::vector<Rational> pts(std::initializer_list<Rational> xs) { return {xs}; }
}  // namespace

TEST_CASE("induced grid keeps the interior start symbolic") {
    const auto inst = demo_instance(false);
    const Rational that(1, 2);
    const auto [grid, outages] = induced_grid(inst, sched({{"a", that}, {"b", Rational(0)}}));
    CHECK(grid.points == pts({Rational(0), that, Rational(1), that + 2, Rational(3)}));
    CHECK(outages.intervals.at("a") == std::vector<int>{2, 3});
    // the breakpoint at 1/2 splits the outage of b across both early intervals
    CHECK(outages.intervals.at("b") == std::vector<int>{1, 2});
}

TEST_CASE("induced grid collapses coincident breakpoints") {
    const auto inst = demo_instance(false);
    const auto [grid, outages] = induced_grid(inst, sched({{"a", Rational(1)}, {"b", Rational(0)}}));
    CHECK(grid.points == pts({Rational(0), Rational(1), Rational(3)}));
    CHECK(outages.intervals.at("a") == std::vector<int>{2});
    CHECK(outages.intervals.at("b") == std::vector<int>{1});
}

TEST_CASE("induced grid covers each job for exactly its processing time") {
    const auto inst = halfstep_instance();
    const auto [grid, outages] = induced_grid(inst, sched({{"a", Rational(3, 2)},
                                                           {"b", Rational(3)},
                                                           {"c", Rational(0)},
                                                           {"d", Rational(0)}}));
    CHECK(grid.points == pts({Rational(0), Rational(3, 2), Rational(3), Rational(9, 2),
                              Rational(5), Rational(6), Rational(7)}));
    for (const auto& job : inst.jobs) {
        Rational covered(0);
        for (int i : outages.intervals.at(job.arc)) covered += grid.length(i);
        CHECK(covered == job.processing);
    }
}

TEST_CASE("release/deadline grid") {
    CHECK(release_deadline_grid(demo_instance(false)).points ==
          pts({Rational(0), Rational(1), Rational(3)}));
    CHECK(release_deadline_grid(halfstep_instance()).points ==
          pts({Rational(0), Rational(3), Rational(5), Rational(6), Rational(7)}));
    auto wide = demo_instance(false);
    wide.jobs[0] = {"a", Rational(0), Rational(3), Rational(2)};
    wide.jobs[1] = {"b", Rational(0), Rational(3), Rational(1)};
    CHECK(release_deadline_grid(wide).points == pts({Rational(0), Rational(3)}));
}

TEST_CASE("unit grid needs an integer horizon") {
    CHECK(unit_grid(demo_instance(false)).points ==
          pts({Rational(0), Rational(1), Rational(2), Rational(3)}));
    CHECK(unit_grid(halfstep_instance()).intervals() == 7);
    auto inst = demo_instance(false);
    inst.horizon = Rational(7, 2);
    inst.jobs.clear();
    CHECK_THROWS_AS(unit_grid(inst), std::invalid_argument);
}

TEST_CASE("conformality of grids on the demo instance") {
    const auto inst = demo_instance(false);
    CHECK(is_conformal(inst, unit_grid(inst)));
    CHECK_FALSE(is_conformal(inst, release_deadline_grid(inst)));  // 0+2=2 missing
    CHECK(is_conformal(inst, Discretization{pts({Rational(0), Rational(1), Rational(2), Rational(3)})}));
}

TEST_CASE("unit grid is conformal for integer data") {
    const auto inst = halfstep_instance();
    CHECK(is_conformal(inst, unit_grid(inst)));
}

TEST_CASE("conformal closure adds the missing completion point") {
    const auto inst = demo_instance(false);
    const auto grid = conformal_closure(inst, release_deadline_grid(inst), 100);
    CHECK(grid.points == pts({Rational(0), Rational(1), Rational(2), Rational(3)}));
    CHECK(is_conformal(inst, grid));
}

TEST_CASE("conformal closure leaves a conformal seed unchanged") {
    const auto inst = halfstep_instance();
    const auto grid = conformal_closure(inst, unit_grid(inst), 100);
    CHECK(grid.points == unit_grid(inst).points);
}

TEST_CASE("conformal closure respects the point budget") {
    Instance inst;
    inst.horizon = Rational(1);
    inst.network.nodes = {"s", "v", "t"};
    inst.network.source = "s";
    inst.network.sink = "t";
    inst.network.arcs = {{"a", "s", "v", Rational(1)}, {"b", "v", "t", Rational(1)}};
    inst.jobs = {{"a", Rational(0), Rational(1), Rational(1, 3)},
                 {"b", Rational(0), Rational(1), Rational(1, 2)}};
    CHECK_THROWS_AS(conformal_closure(inst, Discretization{pts({Rational(0), Rational(1)})}, 5),
                    std::runtime_error);
}

TEST_CASE("closure output is conformal and contains seed and rd grid") {
    const auto inst = halfstep_instance();
    Discretization seed{pts({Rational(0), Rational(1, 2), Rational(7)})};
    const auto grid = conformal_closure(inst, seed, 200);
    CHECK(is_conformal(inst, grid));
    for (const auto& t : seed.points) CHECK(grid.contains(t));
    for (const auto& t : release_deadline_grid(inst).points) CHECK(grid.contains(t));
}

TEST_CASE("grid json round trip") {
    const auto inst = demo_instance(false);
    const auto grid = unit_grid(inst);
    const auto back = grid_from_json(grid_to_json(grid), inst.horizon);
    CHECK(back.points == grid.points);
}
