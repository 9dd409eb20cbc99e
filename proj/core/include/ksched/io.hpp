#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ksched/task.hpp"

namespace ksched::io {

/// One task set per line, as a JSON object:
///   {"model":"constrained","tasks":[{"c":1.0,"t":4.0,"d":4.0},...]}
/// Array order is the priority order; task ids are the array positions.
std::string to_line(const TaskSet& ts);

/// Parses one line; throws std::runtime_error on malformed input or
/// invalid tasks.
TaskSet from_line(const std::string& line);

std::vector<TaskSet> read_tasksets(std::istream& in);
void write_tasksets(std::ostream& out, const std::vector<TaskSet>& sets);

}  // namespace ksched::io
