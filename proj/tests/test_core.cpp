#include <doctest.h>

#include "flowsched/generator.hpp"
#include "flowsched/instance_io.hpp"
#include "support.hpp"

using namespace flowsched;
using testsupport::demo_instance;
using testsupport::halfstep_instance;
using testsupport::sched;

TEST_CASE("rational arithmetic is exact and canonical") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(-4, 8).str() == "-1/2");
    CHECK(Rational::parse("7/2") == Rational(7, 2));
    CHECK(Rational::parse("-3").str() == "-3");
    CHECK(Rational(7, 2).floor() == Rational(3));
    CHECK(Rational(-7, 2).floor() == Rational(-4));
    CHECK(Rational(3, 4) * Rational(4, 3) == Rational(1));
    CHECK_THROWS(Rational::parse("1.5"));
    CHECK_THROWS(Rational::parse("x"));
    CHECK_THROWS(Rational(1, 2) / Rational(0));
}

TEST_CASE("validate_instance accepts the demo network") {
    CHECK(validate_instance(demo_instance(false)).empty());
    CHECK(validate_instance(demo_instance(true)).empty());
    CHECK(validate_instance(halfstep_instance()).empty());
}

TEST_CASE("validate_instance flags deadline violations") {
    auto inst = demo_instance(false);
    inst.jobs[0].release = Rational(2);  // r + p = 4 > d = 3
    const auto bad = validate_instance(inst);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].find("window too narrow") != std::string::npos);
}

TEST_CASE("validate_instance flags storage at a terminal") {
    auto inst = demo_instance(false);
    inst.network.storage["s"] = Rational(1);
    const auto bad = validate_instance(inst);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].find("terminal") != std::string::npos);
}

TEST_CASE("is_feasible checks windows and unknown arcs") {
    const auto inst = demo_instance(false);
    CHECK(is_feasible(inst, sched({{"a", Rational(0)}, {"b", Rational(0)}})));
    CHECK_FALSE(is_feasible(inst, sched({{"a", Rational(3, 2)}, {"b", Rational(0)}})));
    CHECK_FALSE(is_feasible(inst, sched({{"a", Rational(1)}})));  // b missing
    CHECK_THROWS_AS(is_feasible(inst, sched({{"zz", Rational(0)}})), std::invalid_argument);
}

TEST_CASE("halfstep instance accepts the 3/2 start") {
    const auto inst = halfstep_instance();
    CHECK(is_feasible(inst, sched({{"a", Rational(3, 2)},
                                   {"b", Rational(3)},
                                   {"c", Rational(0)},
                                   {"d", Rational(0)}})));
}

TEST_CASE("instance json round trip") {
    const auto inst = demo_instance(true);
    const std::string text = instance_to_json(inst);
    const auto back = instance_from_json(text);
    CHECK(instance_to_json(back) == text);
    CHECK(back.network.storage.at("v") == Rational(2));
    CHECK(back.jobs.size() == 2);
}

TEST_CASE("instance json rejects duplicates and parses rationals") {
    const char* dup = R"({"horizon":"3","nodes":["s","v","t"],"source":"s","sink":"t",
        "arcs":[{"id":"a","tail":"s","head":"v","cap":"2"},
                {"id":"a","tail":"v","head":"t","cap":"1"}],
        "jobs":[]})";
    CHECK_THROWS_WITH_AS(instance_from_json(dup), doctest::Contains("duplicate arc id"),
                         std::runtime_error);

    const char* frac = R"({"horizon":"3","nodes":["s","v","t"],"source":"s","sink":"t",
        "arcs":[{"id":"a","tail":"s","head":"v","cap":"7/2"},
                {"id":"b","tail":"v","head":"t","cap":"1"}],
        "jobs":[]})";
    CHECK(instance_from_json(frac).network.arcs[0].capacity == Rational(7, 2));
}

TEST_CASE("schedule json round trips rationals") {
    const auto s = sched({{"a", Rational(3, 2)}});
    const auto back = schedule_from_json(schedule_to_json(s));
    CHECK(back.starts.at("a") == Rational(3, 2));
}

TEST_CASE("generator is deterministic and valid") {
    GeneratorParams params;
    params.num_nodes = 3;
    params.num_arcs = 2;
    params.num_jobs = 2;
    const auto a = generate_instance(1, params);
    const auto b = generate_instance(1, params);
    CHECK(instance_to_json(a) == instance_to_json(b));
    CHECK(validate_instance(a).empty());
    CHECK(instance_to_json(a) != instance_to_json(generate_instance(2, params)));
}

TEST_CASE("generator respects window range") {
    GeneratorParams params;
    params.num_nodes = 5;
    params.num_arcs = 7;
    params.num_jobs = 4;
    params.window_min = 25;
    params.window_max = 35;
    params.proc_min = 5;
    params.proc_max = 20;
    params.horizon = 1000;
    const auto inst = generate_instance(2, params);
    for (const auto& j : inst.jobs) {
        const Rational width = j.deadline - j.release;
        CHECK(width >= Rational(25));
        CHECK(width <= Rational(35));
    }
}

TEST_CASE("generator rejects processing wider than the window") {
    GeneratorParams params;
    params.proc_max = 10;
    params.window_min = 4;
    CHECK_THROWS_AS(generate_instance(1, params), std::invalid_argument);
}
