#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ksched {

/// One sporadic task: worst-case execution time, minimum inter-arrival
/// time (period) and relative deadline, all in the same time unit.
struct Task {
  int id = 0;
  double wcet = 0.0;
  double period = 1.0;
  double deadline = 1.0;

  double utilization() const { return wcet / period; }
};

/// Deadline model of a task set: implicit (D = T), constrained (D <= T)
/// or arbitrary (unrestricted).
enum class DeadlineModel { implicit, constrained, arbitrary };

const char* to_string(DeadlineModel model);
bool deadline_model_from_string(const std::string& name, DeadlineModel& out);

/// Priority-ordered task set. Index 0 is the highest priority.
struct TaskSet {
  std::vector<Task> tasks;
  DeadlineModel model = DeadlineModel::implicit;

  std::size_t size() const { return tasks.size(); }
  const Task& operator[](std::size_t i) const { return tasks[i]; }

  double total_utilization() const;
  double max_utilization() const;
  /// Utilization summed over tasks 0..k inclusive.
  double utilization_through(std::size_t k) const;
};

/// Tightest model that fits the given tasks.
DeadlineModel classify(const std::vector<Task>& tasks);

enum class TaskError {
  none,
  non_positive_period,
  non_positive_deadline,
  negative_wcet,
  utilization_exceeds_one,
};

const char* to_string(TaskError err);

/// Checks the Task field invariants; TaskError::none means valid.
TaskError validate(const Task& t);

/// First invalid task's error, or none when the whole set is valid.
TaskError validate(const TaskSet& ts);

enum class PriorityPolicy { rate_monotonic, deadline_monotonic };

/// Returns the set sorted by ascending period (RM) or ascending relative
/// deadline (DM). Ties are broken by ascending task id, so the result is
/// deterministic and assignment is idempotent.
TaskSet assign_priorities(const TaskSet& ts, PriorityPolicy policy);

/// Split of the higher-priority tasks hp(tau_k) by period relative to D_k:
/// hp1 holds tasks with T_i < D_k, hp2 those with T_i >= D_k.
struct HpPartition {
  std::vector<Task> hp1;
  std::vector<Task> hp2;
};

HpPartition split_hp(const TaskSet& ts, std::size_t k);

}  // namespace ksched
