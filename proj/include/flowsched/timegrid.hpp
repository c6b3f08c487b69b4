#pragma once

#include <map>
#include <string>
#include <vector>

#include "flowsched/instance.hpp"

namespace flowsched {

/// Breakpoints 0 = t_0 < t_1 < ... < t_n = T. Interval i (1-based, matching
/// the model algebra) spans [points[i-1], points[i]).
struct Discretization {
    std::vector<Rational> points;

    int intervals() const { return static_cast<int>(points.size()) - 1; }
    const Rational& lower(int i) const { return points[i - 1]; }
    const Rational& upper(int i) const { return points[i]; }
    Rational length(int i) const { return points[i] - points[i - 1]; }
    bool contains(const Rational& t) const;
};

/// Per job arc: the interval indices in which the arc is shut (contiguous).
struct OutageMap {
    std::map<std::string, std::vector<int>> intervals;
};

/// Breakpoints induced by a feasible schedule: {0, T} and every start and
/// completion time, with coincident points collapsed. Outage intervals use
/// the half-open rule t* < t_i <= t* + p.
std::pair<Discretization, OutageMap> induced_grid(const Instance& inst, const Schedule& sched);

/// Sorted deduplicated union of all release dates, deadlines, 0 and T.
Discretization release_deadline_grid(const Instance& inst);

/// (0, 1, ..., T); requires an integral horizon.
Discretization unit_grid(const Instance& inst);

/// Conditions: (i) every r_a, d_a is a grid point, and (ii) the grid is
/// closed under +-p_a inside each job window.
bool is_conformal(const Instance& inst, const Discretization& grid);

/// Smallest conformal superset of seed (and of the release/deadline grid),
/// by fixpoint iteration. Throws std::runtime_error when the point count
/// would exceed max_points (possible for incommensurable rational data).
Discretization conformal_closure(const Instance& inst, const Discretization& seed, int max_points);

Discretization grid_from_points(std::vector<Rational> points, const Rational& horizon);

std::string grid_to_json(const Discretization& grid);
Discretization grid_from_json(const std::string& text, const Rational& horizon);

}  // namespace flowsched
