#include "ksched/io.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace ksched::io {

using nlohmann::json;

std::string to_line(const TaskSet& ts) {
  json tasks = json::array();
  for (const Task& t : ts.tasks)
    tasks.push_back({{"c", t.wcet}, {"t", t.period}, {"d", t.deadline}});
  const json obj = {{"model", to_string(ts.model)}, {"tasks", tasks}};
  return obj.dump();
}

TaskSet from_line(const std::string& line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("bad task-set line: ") + e.what());
  }
  TaskSet ts;
  if (!deadline_model_from_string(obj.at("model").get<std::string>(),
                                  ts.model))
    throw std::runtime_error("bad task-set line: unknown deadline model");
  int id = 0;
  for (const json& jt : obj.at("tasks")) {
    Task t;
    t.id = id++;
    t.wcet = jt.at("c").get<double>();
    t.period = jt.at("t").get<double>();
    t.deadline = jt.at("d").get<double>();
    if (TaskError err = validate(t); err != TaskError::none)
      throw std::runtime_error(std::string("invalid task: ") + to_string(err));
    ts.tasks.push_back(t);
  }
  return ts;
}

std::vector<TaskSet> read_tasksets(std::istream& in) {
  std::vector<TaskSet> sets;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    sets.push_back(from_line(line));
  }
  return sets;
}

void write_tasksets(std::ostream& out, const std::vector<TaskSet>& sets) {
  for (const TaskSet& ts : sets) out << to_line(ts) << '\n';
}

}  // namespace ksched::io
