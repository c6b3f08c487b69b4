#include <doctest.h>

#include "flowsched/milp/simplex.hpp"
#include "flowsched/milp/solver.hpp"
#include "flowsched/milp/writer.hpp"
#include "milp_oracle.hpp"

#include <fstream>
#include <sstream>

using namespace flowsched;
using namespace flowsched::milp;

namespace {

MilpModel box_lp() {
    MilpModel m;
    const int x = m.add_continuous("x", Rational(0), std::nullopt);
    m.add_constraint("cap", {{x, Rational(1)}}, ConstraintSense::LessEq, Rational(5));
    m.set_objective(ObjectiveSense::Maximize, {{x, Rational(1)}});
    return m;
}

}  // namespace

TEST_CASE("lp: single bounded variable") {
    const auto r = solve_lp(box_lp());
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(*r.incumbent_value == Rational(5));
}

TEST_CASE("lp: simple polytope") {
    MilpModel m;
    const int x = m.add_continuous("x", Rational(0), Rational(1));
    const int y = m.add_continuous("y", Rational(0), Rational(1));
    m.add_constraint("sum", {{x, Rational(1)}, {y, Rational(1)}}, ConstraintSense::LessEq,
                     Rational(1));
    m.set_objective(ObjectiveSense::Maximize, {{x, Rational(1)}, {y, Rational(1)}});
    const auto r = solve_lp(m);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(*r.incumbent_value == Rational(1));
}

TEST_CASE("lp: equality rows, minimization and exact rationals") {
    MilpModel m;
    const int x = m.add_continuous("x", Rational(0), std::nullopt);
    const int y = m.add_continuous("y", Rational(0), std::nullopt);
    m.add_constraint("mix", {{x, Rational(2)}, {y, Rational(3)}}, ConstraintSense::Equal,
                     Rational(7, 2));
    m.set_objective(ObjectiveSense::Minimize, {{x, Rational(1)}, {y, Rational(1)}});
    const auto r = solve_lp(m);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(*r.incumbent_value == Rational(7, 6));  // all weight on the coefficient-3 variable
}

TEST_CASE("lp: infeasible and unbounded are statuses") {
    MilpModel inf;
    const int x = inf.add_continuous("x", Rational(0), Rational(1));
    inf.add_constraint("too_big", {{x, Rational(1)}}, ConstraintSense::GreaterEq, Rational(2));
    inf.set_objective(ObjectiveSense::Maximize, {{x, Rational(1)}});
    CHECK(solve_lp(inf).status == SolveStatus::Infeasible);

    MilpModel unb;
    const int y = unb.add_continuous("y", Rational(0), std::nullopt);
    unb.set_objective(ObjectiveSense::Maximize, {{y, Rational(1)}});
    CHECK(solve_lp(unb).status == SolveStatus::Unbounded);
}

TEST_CASE("lp: solutions satisfy every constraint exactly") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto m = testsupport::random_milp(seed, 0, 6, 5);
        const auto r = solve_lp(m);
        if (r.status != SolveStatus::Optimal) continue;
        CHECK(m.violations(*r.incumbent).empty());
        CHECK(m.objective_value(*r.incumbent) == *r.incumbent_value);
    }
}

TEST_CASE("lp: free variables are handled") {
    MilpModel m;
    const int x = m.add_variable("x", VarKind::Continuous, std::nullopt, std::nullopt);
    const int y = m.add_continuous("y", Rational(0), Rational(4));
    m.add_constraint("link", {{x, Rational(1)}, {y, Rational(1)}}, ConstraintSense::Equal,
                     Rational(2));
    m.set_objective(ObjectiveSense::Minimize, {{x, Rational(1)}, {y, Rational(2)}});
    const auto r = solve_lp(m);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(*r.incumbent_value == Rational(2));  // x = 2, y = 0 beats pushing y up
}

TEST_CASE("milp: binary forced to zero by a fractional cap") {
    MilpModel m;
    const int x = m.add_binary("x");
    m.add_constraint("cap", {{x, Rational(1)}}, ConstraintSense::LessEq, Rational(1, 2));
    m.set_objective(ObjectiveSense::Maximize, {{x, Rational(1)}});
    const auto r = solve_milp(m);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(*r.incumbent_value == Rational(0));
}

TEST_CASE("milp: tiny knapsack") {
    MilpModel m;
    const int x = m.add_binary("x");
    const int y = m.add_binary("y");
    m.add_constraint("weight", {{x, Rational(2)}, {y, Rational(1)}}, ConstraintSense::LessEq,
                     Rational(2));
    m.set_objective(ObjectiveSense::Maximize, {{x, Rational(3)}, {y, Rational(2)}});
    const auto r = solve_milp(m);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(*r.incumbent_value == Rational(3));
    CHECK((*r.incumbent)[x] == Rational(1));
    CHECK((*r.incumbent)[y] == Rational(0));
}

TEST_CASE("milp: engine matches full enumeration") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const auto m = testsupport::random_milp(seed, 6, 3, 5);
        const auto oracle = testsupport::enumerate_milp(m);
        const auto r = solve_milp(m);
        if (!oracle.feasible) {
            CHECK(r.status == SolveStatus::Infeasible);
            continue;
        }
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(*r.incumbent_value == oracle.value);
        CHECK(m.violations(*r.incumbent).empty());
        CHECK(*r.best_bound == *r.incumbent_value);
    }
}

TEST_CASE("milp: weak duality at limits") {
    const auto m = testsupport::random_milp(7, 10, 4, 8);
    MilpLimits limits;
    limits.max_nodes = 3;
    const auto r = solve_milp(m, limits);
    if (r.incumbent_value && r.best_bound) CHECK(*r.incumbent_value <= *r.best_bound);
}

TEST_CASE("milp: warm start is validated and used") {
    MilpModel m;
    const int x = m.add_binary("x");
    const int y = m.add_binary("y");
    m.add_constraint("weight", {{x, Rational(2)}, {y, Rational(1)}}, ConstraintSense::LessEq,
                     Rational(2));
    m.set_objective(ObjectiveSense::Maximize, {{x, Rational(3)}, {y, Rational(2)}});

    std::vector<Rational> good{Rational(1), Rational(0)};
    CHECK(check_start(m, good).empty());
    const auto r = solve_milp(m, {}, {}, good);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(*r.incumbent_value == Rational(3));

    std::vector<Rational> bad{Rational(1), Rational(1)};  // violates the weight row
    CHECK_FALSE(check_start(m, bad).empty());
    CHECK_THROWS_AS(solve_milp(m, {}, {}, bad), std::invalid_argument);
}

TEST_CASE("milp: node snapshots capture lp point and incumbent") {
    const auto m = testsupport::random_milp(3, 8, 2, 6);
    SnapshotSpec spec;
    spec.at_nodes = {2};
    const auto r = solve_milp(m, {}, spec);
    REQUIRE(r.snapshots.size() == 1);
    CHECK(r.snapshots[0].at_node >= 2);
}

TEST_CASE("export: golden lp file") {
    MilpModel m;
    const int x = m.add_continuous("x", Rational(0), Rational(7, 2));
    const int y = m.add_binary("y");
    const int z = m.add_variable("z", VarKind::Continuous, std::nullopt, std::nullopt);
    m.add_constraint("c1", {{x, Rational(2)}, {y, Rational(-1)}}, ConstraintSense::LessEq,
                     Rational(3));
    m.add_constraint("c2", {{x, Rational(1)}, {z, Rational(1)}}, ConstraintSense::Equal,
                     Rational(1, 3));
    m.set_objective(ObjectiveSense::Maximize, {{x, Rational(1)}, {y, Rational(2)}, {z, Rational(1)}});

    const std::string lp = write_model(m, ExportFormat::Lp);
    std::ifstream golden_in(std::string(TEST_DATA_DIR) + "/model.lp");
    REQUIRE(golden_in.good());
    std::stringstream buf;
    buf << golden_in.rdbuf();
    CHECK(lp == buf.str());

    CHECK(lp.find("z free") != std::string::npos);
    CHECK(lp.find("exact: c2 rhs = 1/3") != std::string::npos);

    const std::string mps = write_model(m, ExportFormat::Mps);
    std::ifstream golden_mps(std::string(TEST_DATA_DIR) + "/model.mps");
    REQUIRE(golden_mps.good());
    std::stringstream buf2;
    buf2 << golden_mps.rdbuf();
    CHECK(mps == buf2.str());
    CHECK(mps.find(" FR BND  z") != std::string::npos);
}
