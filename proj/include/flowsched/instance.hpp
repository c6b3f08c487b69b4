#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flowsched/rational.hpp"

namespace flowsched {

struct Arc {
    std::string id;
    std::string tail;
    std::string head;
    Rational capacity;  // flow-rate units
};

/// One non-preemptive maintenance job shutting its arc for `processing` time
/// somewhere inside [release, deadline].
struct Job {
    std::string arc;
    Rational release;
    Rational deadline;
    Rational processing;

    Rational latest_start() const { return deadline - processing; }
};

struct Network {
    std::vector<std::string> nodes;
    std::vector<Arc> arcs;
    std::string source;
    std::string sink;
    std::map<std::string, Rational> storage;  // node id -> capacity (flow units)

    bool has_node(const std::string& id) const;
    const Arc* arc(const std::string& id) const;
    std::vector<const Arc*> out_arcs(const std::string& node) const;
    std::vector<const Arc*> in_arcs(const std::string& node) const;
};

struct Instance {
    Network network;
    std::vector<Job> jobs;
    Rational horizon;
    /// Pairs of job arcs whose jobs must be processed at the same time
    /// (produced by splitting a storage node with a job blocking both sides).
    std::vector<std::pair<std::string, std::string>> simultaneous;

    const Job* job_for(const std::string& arc_id) const;
    bool has_storage() const { return !network.storage.empty(); }
    /// True when every capacity, storage bound and job time is an integer.
    bool integer_data() const;
};

/// Start time per maintained arc; the decision vector of the master problem.
struct Schedule {
    std::map<std::string, Rational> starts;
};

/// Empty result means every invariant holds; each entry names field and rule.
std::vector<std::string> validate_instance(const Instance& inst);

/// True iff every job arc is scheduled inside its window. Throws
/// std::invalid_argument when the schedule names an unknown arc.
bool is_feasible(const Instance& inst, const Schedule& sched);

}  // namespace flowsched
