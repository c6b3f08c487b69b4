#pragma once

#include <string>

#include "flowsched/milp/model.hpp"

namespace flowsched::milp {

enum class ExportFormat { Lp, Mps };

/// CPLEX-style LP / free MPS text. Coefficients whose decimal expansion
/// terminates are written exactly; the rest are rounded to 15 significant
/// digits with their exact ratios listed in comments.
std::string write_model(const MilpModel& model, ExportFormat format);

void export_model(const MilpModel& model, ExportFormat format, const std::string& path);

}  // namespace flowsched::milp
