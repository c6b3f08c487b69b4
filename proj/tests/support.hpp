#pragma once

#include <string>

#include "flowsched/instance.hpp"

// Shared fixtures: the two-arc storage demo network and the four-job
// non-integer-optimum network used across the suites.
namespace testsupport {

using flowsched::Instance;
using flowsched::Rational;

// s -a(2)-> v -b(1)-> t, T=3; jobs a:[0,3] p=2, b:[0,1] p=1.
inline Instance demo_instance(bool with_storage) {
    Instance inst;
    inst.horizon = Rational(3);
    inst.network.nodes = {"s", "v", "t"};
    inst.network.source = "s";
    inst.network.sink = "t";
    inst.network.arcs = {{"a", "s", "v", Rational(2)}, {"b", "v", "t", Rational(1)}};
    if (with_storage) inst.network.storage["v"] = Rational(2);
    inst.jobs = {{"a", Rational(0), Rational(3), Rational(2)},
                 {"b", Rational(0), Rational(1), Rational(1)}};
    return inst;
}

// s -a(4)-> v with storage 3; v -> t via b(2), c(1), d(4); T=7.
// Jobs: a:[0,5] p=3, b:[3,5] p=2, c:[0,5] p=5, d:[0,6] p=6.
// Only the job on a can move; the unique throughput-16 start is 3/2.
inline Instance halfstep_instance() {
    Instance inst;
    inst.horizon = Rational(7);
    inst.network.nodes = {"s", "v", "t"};
    inst.network.source = "s";
    inst.network.sink = "t";
    inst.network.arcs = {{"a", "s", "v", Rational(4)},
                         {"b", "v", "t", Rational(2)},
                         {"c", "v", "t", Rational(1)},
                         {"d", "v", "t", Rational(4)}};
    inst.network.storage["v"] = Rational(3);
    inst.jobs = {{"a", Rational(0), Rational(5), Rational(3)},
                 {"b", Rational(3), Rational(5), Rational(2)},
                 {"c", Rational(0), Rational(5), Rational(5)},
                 {"d", Rational(0), Rational(6), Rational(6)}};
    return inst;
}

inline flowsched::Schedule sched(std::initializer_list<std::pair<std::string, Rational>> starts) {
    flowsched::Schedule s;
    for (const auto& [arc, t] : starts) s.starts[arc] = t;
    return s;
}

}  // namespace testsupport
