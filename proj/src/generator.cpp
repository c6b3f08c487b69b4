#include "flowsched/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace flowsched {
namespace {

// splitmix64: tiny, stable across platforms (std distributions are not).
struct Rng {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n), rejection-sampled
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t v;
        do v = next(); while (v >= limit);
        return v % n;
    }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

}  // namespace

Instance generate_instance(std::uint64_t seed, const GeneratorParams& p) {
    if (p.num_nodes < 2) throw std::invalid_argument("generator: need at least source and sink");
    if (p.num_arcs < p.num_nodes - 1)
        throw std::invalid_argument("generator: too few arcs to connect source to sink");
    if (p.num_jobs > p.num_arcs) throw std::invalid_argument("generator: more jobs than arcs");
    if (p.proc_min < 1 || p.proc_min > p.proc_max)
        throw std::invalid_argument("generator: bad processing range");
    if (p.proc_max > p.window_min)
        throw std::invalid_argument("generator: max processing time exceeds minimum window width");
    if (p.window_min > p.window_max || p.window_max > p.horizon)
        throw std::invalid_argument("generator: bad window range");
    if (p.cap_min < 0 || p.cap_min > p.cap_max)
        throw std::invalid_argument("generator: bad capacity range");
    if (p.num_storage > p.num_nodes - 2)
        throw std::invalid_argument("generator: more storage nodes than transshipment nodes");

    Rng rng{seed};
    Instance inst;
    Network& net = inst.network;
    inst.horizon = Rational(p.horizon);

    net.source = "s";
    net.sink = "t";
    net.nodes.push_back("s");
    for (int i = 1; i <= p.num_nodes - 2; ++i) net.nodes.push_back("v" + std::to_string(i));
    net.nodes.push_back("t");

    // spine s -> v1 -> ... -> t guarantees reachability
    auto add_arc = [&](const std::string& tail, const std::string& head) {
        Arc a;
        a.id = "a" + std::to_string(net.arcs.size() + 1);
        a.tail = tail;
        a.head = head;
        a.capacity = Rational(rng.range(p.cap_min, p.cap_max));
        net.arcs.push_back(std::move(a));
    };
    for (std::size_t i = 0; i + 1 < net.nodes.size(); ++i) add_arc(net.nodes[i], net.nodes[i + 1]);
    while (static_cast<int>(net.arcs.size()) < p.num_arcs) {
        // heads exclude the source, tails exclude the sink
        const std::string tail = net.nodes[rng.below(net.nodes.size() - 1)];
        std::string head;
        do {
            head = net.nodes[1 + rng.below(net.nodes.size() - 1)];
        } while (head == tail);
        add_arc(tail, head);
    }

    // storage on random transshipment nodes
    std::vector<std::string> inner(net.nodes.begin() + 1, net.nodes.end() - 1);
    for (int k = 0; k < p.num_storage; ++k) {
        const std::size_t pick = rng.below(inner.size());
        net.storage[inner[pick]] = Rational(rng.range(p.storage_cap_min, p.storage_cap_max));
        inner.erase(inner.begin() + static_cast<long>(pick));
    }

    // jobs on distinct random arcs
    std::vector<std::size_t> arc_pool(net.arcs.size());
    for (std::size_t i = 0; i < arc_pool.size(); ++i) arc_pool[i] = i;
    for (int k = 0; k < p.num_jobs; ++k) {
        const std::size_t pick = rng.below(arc_pool.size());
        const std::size_t arc_idx = arc_pool[pick];
        arc_pool.erase(arc_pool.begin() + static_cast<long>(pick));

        Job job;
        job.arc = net.arcs[arc_idx].id;
        const long width = rng.range(p.window_min, p.window_max);
        const long release = rng.range(0, p.horizon - width);
        job.release = Rational(release);
        job.deadline = Rational(release + width);
        job.processing = Rational(rng.range(p.proc_min, p.proc_max));
        inst.jobs.push_back(std::move(job));
    }
    std::sort(inst.jobs.begin(), inst.jobs.end(),
              [](const Job& a, const Job& b) { return a.arc < b.arc; });

    auto violations = validate_instance(inst);
    if (!violations.empty())
        throw std::logic_error("generator produced an invalid instance: " + violations.front());
    return inst;
}

}  // namespace flowsched
