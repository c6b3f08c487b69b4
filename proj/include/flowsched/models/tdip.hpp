#pragma once

#include "flowsched/instance.hpp"
#include "flowsched/milp/model.hpp"
#include "flowsched/models/interval_sets.hpp"
#include "flowsched/timegrid.hpp"

namespace flowsched::models {

/// Fractional per-interval processing intensities; the heuristics' input.
struct ZVector {
    Discretization grid;
    std::map<std::string, std::map<int, Rational>> entries;  // arc -> interval -> z in [0,1]
};

/// Fixed-grid relaxation: binary start indicators, continuous processing
/// fractions. Its optimum upper-bounds the master optimum for any grid.
milp::MilpModel build_tdip(const Instance& inst, const Discretization& grid);

/// Conformal variant with binary z and the simplified start/processing link;
/// every feasible point maps to a feasible schedule, so its optimum
/// lower-bounds the master optimum. Rejects non-conformal grids.
milp::MilpModel build_tdip_lb(const Instance& inst, const Discretization& grid);

/// y_{ai} = 1 means the job starts at t_{i-1}.
Schedule extract_schedule_tdip_lb(const milp::MilpModel& model, const Instance& inst,
                                  const Discretization& grid,
                                  const std::vector<Rational>& assignment);

/// Reads the z variables out of any TDIP-family assignment, clipped to [0,1].
ZVector extract_zvector(const milp::MilpModel& model, const Instance& inst,
                        const Discretization& grid, const std::vector<Rational>& assignment);

/// Feasible (x, y, z) assignment realizing a schedule on the given grid;
/// usable as a warm start for build_tdip models.
std::vector<Rational> embed_schedule_tdip(const milp::MilpModel& model, const Instance& inst,
                                          const Discretization& grid, const Schedule& sched);

}  // namespace flowsched::models
