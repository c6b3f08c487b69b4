#include "flowsched/timegrid.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace flowsched {

bool Discretization::contains(const Rational& t) const {
    return std::binary_search(points.begin(), points.end(), t);
}

Discretization grid_from_points(std::vector<Rational> points, const Rational& horizon) {
    points.push_back(Rational(0));
    points.push_back(horizon);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.front() < Rational(0) || points.back() > horizon)
        throw std::invalid_argument("grid points must lie in [0, T]");
    return Discretization{std::move(points)};
}

std::pair<Discretization, OutageMap> induced_grid(const Instance& inst, const Schedule& sched) {
    if (!is_feasible(inst, sched))
        throw std::invalid_argument("induced_grid requires a feasible schedule");
    std::vector<Rational> points;
    for (const auto& job : inst.jobs) {
        const Rational start = sched.starts.at(job.arc);
        points.push_back(start);
        points.push_back(start + job.processing);
    }
    Discretization grid = grid_from_points(std::move(points), inst.horizon);

    OutageMap outages;
    for (const auto& job : inst.jobs) {
        const Rational start = sched.starts.at(job.arc);
        const Rational end = start + job.processing;
        std::vector<int>& shut = outages.intervals[job.arc];
        for (int i = 1; i <= grid.intervals(); ++i)
            if (start < grid.upper(i) && grid.upper(i) <= end) shut.push_back(i);
    }
    return {std::move(grid), std::move(outages)};
}

Discretization release_deadline_grid(const Instance& inst) {
    std::vector<Rational> points;
    for (const auto& job : inst.jobs) {
        points.push_back(job.release);
        points.push_back(job.deadline);
    }
    return grid_from_points(std::move(points), inst.horizon);
}

Discretization unit_grid(const Instance& inst) {
    if (!inst.horizon.is_integer())
        throw std::invalid_argument("unit grid requires an integer horizon, got T = " + inst.horizon.str());
    const long T = inst.horizon.to_long();
    Discretization grid;
    for (long i = 0; i <= T; ++i) grid.points.push_back(Rational(i));
    return grid;
}

bool is_conformal(const Instance& inst, const Discretization& grid) {
    for (const auto& job : inst.jobs)
        if (!grid.contains(job.release) || !grid.contains(job.deadline)) return false;
    for (const Rational& t : grid.points) {
        for (const auto& job : inst.jobs) {
            if (t >= job.release && t <= job.latest_start() && !grid.contains(t + job.processing))
                return false;
            if (t >= job.release + job.processing && t <= job.deadline && !grid.contains(t - job.processing))
                return false;
        }
    }
    return true;
}

Discretization conformal_closure(const Instance& inst, const Discretization& seed, int max_points) {
    std::set<Rational> pts(seed.points.begin(), seed.points.end());
    pts.insert(Rational(0));
    pts.insert(inst.horizon);
    for (const auto& job : inst.jobs) {
        pts.insert(job.release);
        pts.insert(job.deadline);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Rational> added;
        for (const Rational& t : pts) {
            for (const auto& job : inst.jobs) {
                if (t >= job.release && t <= job.latest_start() && !pts.count(t + job.processing))
                    added.push_back(t + job.processing);
                if (t >= job.release + job.processing && t <= job.deadline && !pts.count(t - job.processing))
                    added.push_back(t - job.processing);
            }
        }
        for (const Rational& t : added) changed |= pts.insert(t).second;
        if (static_cast<int>(pts.size()) > max_points)
            throw std::runtime_error("conformal closure exceeded the point budget of " +
                                     std::to_string(max_points));
    }
    Discretization grid{std::vector<Rational>(pts.begin(), pts.end())};
    return grid;
}

std::string grid_to_json(const Discretization& grid) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& t : grid.points) j.push_back(t.str());
    return j.dump() + "\n";
}

Discretization grid_from_json(const std::string& text, const Rational& horizon) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::runtime_error("grid JSON must be an array of rational strings");
    std::vector<Rational> points;
    for (const auto& v : j) points.push_back(Rational::parse(v.get<std::string>()));
    return grid_from_points(std::move(points), horizon);
}

}  // namespace flowsched
