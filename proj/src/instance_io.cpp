#include "flowsched/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace flowsched {
namespace {

using json = nlohmann::ordered_json;

Rational parse_rational_field(const json& j, const std::string& where) {
    if (!j.is_string())
        throw std::runtime_error(where + ": numbers must be strings (\"3\" or \"7/2\")");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        throw std::runtime_error(where + ": " + e.what());
    }
}

const json& require(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw std::runtime_error(where + ": missing field '" + key + "'");
    return *it;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

}  // namespace

Instance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("instance JSON parse error: ") + e.what());
    }
    Instance inst;
    inst.horizon = parse_rational_field(require(j, "horizon", "instance"), "horizon");
    for (const auto& n : require(j, "nodes", "instance"))
        inst.network.nodes.push_back(n.get<std::string>());
    inst.network.source = require(j, "source", "instance").get<std::string>();
    inst.network.sink = require(j, "sink", "instance").get<std::string>();
    for (const auto& a : require(j, "arcs", "instance")) {
        Arc arc;
        arc.id = require(a, "id", "arc").get<std::string>();
        arc.tail = require(a, "tail", "arc '" + arc.id + "'").get<std::string>();
        arc.head = require(a, "head", "arc '" + arc.id + "'").get<std::string>();
        arc.capacity = parse_rational_field(require(a, "cap", "arc '" + arc.id + "'"),
                                            "arc '" + arc.id + "' cap");
        inst.network.arcs.push_back(std::move(arc));
    }
    if (j.contains("storage")) {
        for (const auto& [node, cap] : j["storage"].items())
            inst.network.storage[node] = parse_rational_field(cap, "storage '" + node + "'");
    }
    for (const auto& jj : require(j, "jobs", "instance")) {
        Job job;
        job.arc = require(jj, "arc", "job").get<std::string>();
        const std::string where = "job on '" + job.arc + "'";
        job.release = parse_rational_field(require(jj, "r", where), where + " r");
        job.deadline = parse_rational_field(require(jj, "d", where), where + " d");
        job.processing = parse_rational_field(require(jj, "p", where), where + " p");
        inst.jobs.push_back(std::move(job));
    }
    if (j.contains("simultaneous")) {
        for (const auto& pair : j["simultaneous"]) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::runtime_error("simultaneous: entries must be [arc, arc] pairs");
            inst.simultaneous.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
    }

    auto violations = validate_instance(inst);
    if (!violations.empty()) {
        std::string msg = "instance rejected:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw std::runtime_error(msg);
    }
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["horizon"] = inst.horizon.str();
    j["nodes"] = inst.network.nodes;
    j["source"] = inst.network.source;
    j["sink"] = inst.network.sink;
    j["arcs"] = json::array();
    for (const auto& a : inst.network.arcs)
        j["arcs"].push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}, {"cap", a.capacity.str()}});
    j["storage"] = json::object();
    for (const auto& [v, cap] : inst.network.storage) j["storage"][v] = cap.str();
    j["jobs"] = json::array();
    for (const auto& job : inst.jobs)
        j["jobs"].push_back({{"arc", job.arc},
                             {"r", job.release.str()},
                             {"d", job.deadline.str()},
                             {"p", job.processing.str()}});
    if (!inst.simultaneous.empty()) {
        j["simultaneous"] = json::array();
        for (const auto& [a1, a2] : inst.simultaneous) j["simultaneous"].push_back({a1, a2});
    }
    return j.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
    try {
        return instance_from_json(read_file(path));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_instance(const Instance& inst, const std::string& path) {
    write_file(path, instance_to_json(inst));
}

Schedule schedule_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("schedule JSON parse error: ") + e.what());
    }
    Schedule s;
    for (const auto& [arc, start] : require(j, "starts", "schedule").items())
        s.starts[arc] = parse_rational_field(start, "start of '" + arc + "'");
    return s;
}

std::string schedule_to_json(const Schedule& sched) {
    json j;
    j["starts"] = json::object();
    for (const auto& [arc, start] : sched.starts) j["starts"][arc] = start.str();
    return j.dump(2) + "\n";
}

Schedule load_schedule(const std::string& path) {
    try {
        return schedule_from_json(read_file(path));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_schedule(const Schedule& sched, const std::string& path) {
    write_file(path, schedule_to_json(sched));
}

}  // namespace flowsched
