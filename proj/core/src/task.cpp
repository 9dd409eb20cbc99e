#include "ksched/task.hpp"

#include <algorithm>

namespace ksched {

const char* to_string(DeadlineModel model) {
  switch (model) {
    case DeadlineModel::implicit: return "implicit";
    case DeadlineModel::constrained: return "constrained";
    case DeadlineModel::arbitrary: return "arbitrary";
  }
  return "?";
}

bool deadline_model_from_string(const std::string& name, DeadlineModel& out) {
  if (name == "implicit") {
    out = DeadlineModel::implicit;
  } else if (name == "constrained") {
    out = DeadlineModel::constrained;
  } else if (name == "arbitrary") {
    out = DeadlineModel::arbitrary;
  } else {
    return false;
  }
  return true;
}

double TaskSet::total_utilization() const {
  double sum = 0.0;
  for (const Task& t : tasks) sum += t.utilization();
  return sum;
}

double TaskSet::max_utilization() const {
  double u = 0.0;
  for (const Task& t : tasks) u = std::max(u, t.utilization());
  return u;
}

double TaskSet::utilization_through(std::size_t k) const {
  double sum = 0.0;
  for (std::size_t i = 0; i <= k && i < tasks.size(); ++i)
    sum += tasks[i].utilization();
  return sum;
}

DeadlineModel classify(const std::vector<Task>& tasks) {
  bool implicit = true;
  bool constrained = true;
  for (const Task& t : tasks) {
    if (t.deadline != t.period) implicit = false;
    if (t.deadline > t.period) constrained = false;
  }
  if (implicit) return DeadlineModel::implicit;
  if (constrained) return DeadlineModel::constrained;
  return DeadlineModel::arbitrary;
}

const char* to_string(TaskError err) {
  switch (err) {
    case TaskError::none: return "none";
    case TaskError::non_positive_period: return "non-positive period";
    case TaskError::non_positive_deadline: return "non-positive deadline";
    case TaskError::negative_wcet: return "negative wcet";
    case TaskError::utilization_exceeds_one: return "utilization exceeds one";
  }
  return "?";
}

TaskError validate(const Task& t) {
  if (!(t.period > 0.0)) return TaskError::non_positive_period;
  if (!(t.deadline > 0.0)) return TaskError::non_positive_deadline;
  if (t.wcet < 0.0) return TaskError::negative_wcet;
  if (t.wcet / t.period > 1.0) return TaskError::utilization_exceeds_one;
  return TaskError::none;
}

TaskError validate(const TaskSet& ts) {
  for (const Task& t : ts.tasks) {
    TaskError err = validate(t);
    if (err != TaskError::none) return err;
  }
  return TaskError::none;
}

TaskSet assign_priorities(const TaskSet& ts, PriorityPolicy policy) {
  TaskSet out = ts;
  auto key = [policy](const Task& t) {
    return policy == PriorityPolicy::rate_monotonic ? t.period : t.deadline;
  };
  std::sort(out.tasks.begin(), out.tasks.end(),
            [&](const Task& a, const Task& b) {
              if (key(a) != key(b)) return key(a) < key(b);
              return a.id < b.id;
            });
  return out;
}

HpPartition split_hp(const TaskSet& ts, std::size_t k) {
  HpPartition part;
  const double dk = ts.tasks.at(k).deadline;
  for (std::size_t i = 0; i < k; ++i) {
    if (ts.tasks[i].period < dk) {
      part.hp1.push_back(ts.tasks[i]);
    } else {
      part.hp2.push_back(ts.tasks[i]);
    }
  }
  return part;
}

}  // namespace ksched
