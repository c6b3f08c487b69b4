#include "flowsched/instance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace flowsched {

bool Network::has_node(const std::string& id) const {
    return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
}

const Arc* Network::arc(const std::string& id) const {
    for (const auto& a : arcs)
        if (a.id == id) return &a;
    return nullptr;
}

std::vector<const Arc*> Network::out_arcs(const std::string& node) const {
    std::vector<const Arc*> out;
    for (const auto& a : arcs)
        if (a.tail == node) out.push_back(&a);
    return out;
}

std::vector<const Arc*> Network::in_arcs(const std::string& node) const {
    std::vector<const Arc*> in;
    for (const auto& a : arcs)
        if (a.head == node) in.push_back(&a);
    return in;
}

const Job* Instance::job_for(const std::string& arc_id) const {
    for (const auto& j : jobs)
        if (j.arc == arc_id) return &j;
    return nullptr;
}

bool Instance::integer_data() const {
    if (!horizon.is_integer()) return false;
    for (const auto& a : network.arcs)
        if (!a.capacity.is_integer()) return false;
    for (const auto& [v, cap] : network.storage)
        if (!cap.is_integer()) return false;
    for (const auto& j : jobs)
        if (!j.release.is_integer() || !j.deadline.is_integer() || !j.processing.is_integer())
            return false;
    return true;
}

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> bad;
    const Network& net = inst.network;

    std::set<std::string> node_set(net.nodes.begin(), net.nodes.end());
    if (node_set.size() != net.nodes.size()) bad.push_back("nodes: duplicate node id");
    if (!net.has_node(net.source)) bad.push_back("source: node '" + net.source + "' not in nodes");
    if (!net.has_node(net.sink)) bad.push_back("sink: node '" + net.sink + "' not in nodes");
    if (net.source == net.sink) bad.push_back("source/sink: must be distinct");

    std::set<std::string> arc_ids;
    for (const auto& a : net.arcs) {
        if (!arc_ids.insert(a.id).second) bad.push_back("arcs: duplicate arc id '" + a.id + "'");
        if (!net.has_node(a.tail)) bad.push_back("arc '" + a.id + "': tail '" + a.tail + "' not in nodes");
        if (!net.has_node(a.head)) bad.push_back("arc '" + a.id + "': head '" + a.head + "' not in nodes");
        if (a.capacity < Rational(0)) bad.push_back("arc '" + a.id + "': capacity must be >= 0");
    }

    for (const auto& [v, cap] : net.storage) {
        if (!net.has_node(v)) bad.push_back("storage: node '" + v + "' not in nodes");
        if (v == net.source || v == net.sink)
            bad.push_back("storage: node '" + v + "' is a terminal; storage nodes must avoid source and sink");
        if (cap < Rational(0)) bad.push_back("storage '" + v + "': capacity must be >= 0");
    }

    if (inst.horizon <= Rational(0)) bad.push_back("horizon: must be > 0");

    std::set<std::string> job_arcs;
    for (const auto& j : inst.jobs) {
        const std::string tag = "job on '" + j.arc + "'";
        if (!net.arc(j.arc)) bad.push_back(tag + ": arc does not exist");
        if (!job_arcs.insert(j.arc).second) bad.push_back(tag + ": more than one job per arc");
        if (j.release < Rational(0)) bad.push_back(tag + ": release must be >= 0");
        if (j.processing <= Rational(0)) bad.push_back(tag + ": processing must be > 0");
        if (j.release + j.processing > j.deadline)
            bad.push_back(tag + ": window too narrow (release + processing > deadline)");
        if (j.deadline > inst.horizon) bad.push_back(tag + ": deadline exceeds horizon");
    }

    for (const auto& [a1, a2] : inst.simultaneous) {
        if (!inst.job_for(a1) || !inst.job_for(a2) || a1 == a2)
            bad.push_back("simultaneous: pair (" + a1 + ", " + a2 + ") must name two distinct job arcs");
    }
    return bad;
}

bool is_feasible(const Instance& inst, const Schedule& sched) {
    for (const auto& [arc_id, start] : sched.starts) {
        if (!inst.job_for(arc_id))
            throw std::invalid_argument("schedule names arc '" + arc_id + "' which has no job");
        (void)start;
    }
    for (const auto& j : inst.jobs) {
        auto it = sched.starts.find(j.arc);
        if (it == sched.starts.end()) return false;
        if (it->second < j.release || it->second > j.latest_start()) return false;
    }
    for (const auto& [a1, a2] : inst.simultaneous) {
        auto i1 = sched.starts.find(a1);
        auto i2 = sched.starts.find(a2);
        if (i1 == sched.starts.end() || i2 == sched.starts.end()) return false;
        if (i1->second != i2->second) return false;
    }
    return true;
}

}  // namespace flowsched
