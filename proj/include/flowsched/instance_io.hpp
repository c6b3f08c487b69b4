#pragma once

#include <string>

#include "flowsched/instance.hpp"

namespace flowsched {

/// Reads the documented instance JSON. Throws std::runtime_error with a
/// field-level diagnostic on parse failures; invariant-violating instances
/// are rejected with the violation list in the message.
Instance load_instance(const std::string& path);
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& inst, const std::string& path);
std::string instance_to_json(const Instance& inst);

Schedule load_schedule(const std::string& path);
Schedule schedule_from_json(const std::string& text);
void save_schedule(const Schedule& sched, const std::string& path);
std::string schedule_to_json(const Schedule& sched);

}  // namespace flowsched
