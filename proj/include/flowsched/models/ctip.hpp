#pragma once

#include "flowsched/instance.hpp"
#include "flowsched/milp/model.hpp"

namespace flowsched::models {

/// The exact continuous-time formulation: breakpoints t_0..t_M are decision
/// variables (M = 2|A_1| + 1), with maintenance indicators, start indicators,
/// linearization variables and the flow system. Its optimum equals the
/// master problem's optimum.
milp::MilpModel build_ctip(const Instance& inst);

/// Start = earliest interval start with the maintenance indicator set.
Schedule extract_schedule_ctip(const milp::MilpModel& model, const Instance& inst,
                               const std::vector<Rational>& assignment);

/// Full feasible assignment realizing a schedule (breakpoints, indicator
/// pattern, durations and an optimal flow); usable as a warm start. The
/// assignment's objective equals evaluate_schedule(sched).
std::vector<Rational> embed_schedule_ctip(const milp::MilpModel& model, const Instance& inst,
                                          const Schedule& sched);

/// Start every job at floor((r + d - p) / 2), clamped into its window.
Schedule midpoint_schedule(const Instance& inst);

}  // namespace flowsched::models
