#include "ksched/uniproc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ksched/k2q.hpp"
#include "ksched/k2u.hpp"

namespace ksched::uniproc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double demand_higher(const TaskSet& ts, std::size_t k, double t) {
  double d = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    d += std::ceil(t / ts[i].period) * ts[i].wcet;
  return d;
}

// Least fixed point of t -> base + demand_higher(t), starting from
// `start`, or +infinity once the iterate exceeds `limit`. The demand is
// a step function, so the iteration terminates on exact equality.
double least_fixed_point(const TaskSet& ts, std::size_t k, double base,
                         double start, double limit) {
  double t = start;
  for (;;) {
    const double next = base + demand_higher(ts, k, t);
    if (next <= t) return t;
    if (next > limit) return kInf;
    t = next;
  }
}

// Higher-priority tasks with the extreme point t_i = (ceil(d/T_i)-1)*T_i,
// sorted by non-decreasing (t_i, U_i, id).
struct EpEntry {
  double t = 0.0;
  Task task;
};

std::vector<EpEntry> extreme_points(const std::vector<Task>& hp1, double d) {
  std::vector<EpEntry> out;
  out.reserve(hp1.size());
  for (const Task& t : hp1) {
    const double m = std::ceil(d / t.period) - 1.0;
    out.push_back({m * t.period, t});
  }
  std::sort(out.begin(), out.end(), [](const EpEntry& a, const EpEntry& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.task.utilization() != b.task.utilization())
      return a.task.utilization() < b.task.utilization();
    return a.task.id < b.task.id;
  });
  return out;
}

}  // namespace

VirtualTask make_virtual(const TaskSet& ts, std::size_t k, VirtualMode mode) {
  const Task& task = ts.tasks.at(k);
  HpPartition part = split_hp(ts, k);
  double c = task.wcet;
  if (mode == VirtualMode::arbitrary)
    c *= std::ceil(task.deadline / task.period);
  for (const Task& t : part.hp2) c += t.wcet;
  return VirtualTask{c, task.deadline, std::move(part.hp1)};
}

bool RtaResult::divergent() const { return std::isinf(wcrt); }

Verdict tda_exact(const TaskSet& ts, std::size_t k, double* wcrt) {
  const Task& task = ts.tasks.at(k);
  if (task.deadline > task.period)
    throw std::invalid_argument("tda_exact: task has D > T");
  const double r =
      least_fixed_point(ts, k, task.wcet, task.wcet, task.deadline);
  if (wcrt) *wcrt = r;
  return r <= task.deadline ? Verdict::schedulable(r) : Verdict::not_proven(r);
}

RtaResult busy_window_exact(const TaskSet& ts, std::size_t k) {
  const Task& task = ts.tasks.at(k);
  RtaResult res;
  if (ts.utilization_through(k) > 1.0) {
    res.wcrt = kInf;
    return res;
  }
  double prev = 0.0;
  double worst = 0.0;
  for (std::uint64_t h = 1; h <= kBusyWindowJobCap; ++h) {
    const double base = double(h) * task.wcet;
    double r = least_fixed_point(ts, k, base, std::max(base, prev), kInf);
    res.per_job.emplace_back(h, r);
    res.iterations = h;
    worst = std::max(worst, r - double(h - 1) * task.period);
    if (r <= double(h) * task.period) {
      res.wcrt = worst;
      return res;
    }
    prev = r;
  }
  res.wcrt = worst;
  res.cap_exceeded = true;
  return res;
}

Verdict busy_window_length_test(const TaskSet& ts, std::size_t k) {
  const Task& task = ts.tasks.at(k);
  double t = task.wcet;
  for (std::size_t i = 0; i < k; ++i) t += ts[i].wcet;
  if (t <= 0.0) return Verdict::schedulable(0.0);
  for (;;) {
    const double next =
        std::ceil(t / task.period) * task.wcet + demand_higher(ts, k, t);
    if (next <= t)
      return t <= task.deadline ? Verdict::schedulable(t)
                                : Verdict::not_proven(t);
    if (next > task.deadline) return Verdict::not_proven(next);
    t = next;
  }
}

Verdict hp_test(const TaskSet& ts, std::size_t k, VirtualMode mode) {
  const VirtualTask vt = make_virtual(ts, k, mode);
  k2u::Instance inst;
  inst.ck = vt.c_prime;
  inst.tk = vt.d;
  for (const Task& t : vt.hp1)
    inst.higher.push_back({1.0, 1.0, t.utilization()});
  const Verdict hyper = k2u::hyperbolic_test(inst, 1.0, 1.0);
  if (hyper.ok()) return hyper;
  double sum_u = 0.0;
  for (const Task& t : vt.hp1) sum_u += t.utilization();
  const double bound =
      k2u::uniform_utilization_bound((long long)vt.hp1.size() + 1, 1.0, 1.0);
  if (vt.c_prime / vt.d + sum_u <= bound) return Verdict::schedulable(bound);
  return hyper;
}

Verdict hp_ep_test(const TaskSet& ts, std::size_t k, VirtualMode mode) {
  VirtualTask vt = make_virtual(ts, k, mode);
  k2u::Instance inst;
  inst.tk = vt.d;
  double ck = vt.c_prime;
  for (const EpEntry& e : extreme_points(vt.hp1, vt.d)) {
    if (e.t <= 0.0) {
      // Degenerate extreme point (T_i >= D_k cannot happen inside hp1,
      // but keep the safe fallback): charge the full job like hp2.
      ck += e.task.wcet;
      continue;
    }
    const double m = e.t / e.task.period;
    inst.higher.push_back(
        {1.0, std::min(1.0, 1.0 / m), e.task.utilization()});
  }
  inst.ck = ck;
  if (inst.ck <= 0.0) return Verdict::schedulable(1.0);
  return k2u::extreme_point_test(inst);
}

Verdict qb_test(const TaskSet& ts, std::size_t k, VirtualMode mode) {
  VirtualTask vt = make_virtual(ts, k, mode);
  k2q::Instance inst;
  inst.ck = vt.c_prime;
  inst.tk = vt.d;
  for (const EpEntry& e : extreme_points(vt.hp1, vt.d))
    inst.higher.push_back(
        {1.0, 1.0, e.task.utilization(), e.task.wcet, e.task.id});
  return k2q::quadratic_test(inst);
}

namespace {

// All higher-priority tasks as quadratic terms with alpha = beta = 1,
// ordered by non-increasing period (ties by ascending id).
std::vector<k2q::Term> response_terms(const TaskSet& ts, std::size_t k) {
  std::vector<Task> hp(ts.tasks.begin(), ts.tasks.begin() + k);
  std::sort(hp.begin(), hp.end(), [](const Task& a, const Task& b) {
    if (a.period != b.period) return a.period > b.period;
    return a.id < b.id;
  });
  std::vector<k2q::Term> terms;
  terms.reserve(hp.size());
  for (const Task& t : hp)
    terms.push_back({1.0, 1.0, t.utilization(), t.wcet, t.id});
  return terms;
}

}  // namespace

double qb_response_time(const TaskSet& ts, std::size_t k) {
  if (ts.utilization_through(k) > 1.0) return kInf;
  return k2q::response_bound(response_terms(ts, k), ts.tasks.at(k).wcet);
}

double bini_response_bound(const TaskSet& ts, std::size_t k) {
  double sum_u = 0.0, sum_c = 0.0, sum_uc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Task& t = ts[i];
    sum_u += t.utilization();
    sum_c += t.wcet;
    sum_uc += t.utilization() * t.wcet;
  }
  if (sum_u >= 1.0) return kInf;
  return (ts.tasks.at(k).wcet + sum_c - sum_uc) / (1.0 - sum_u);
}

Verdict qb_response_schedulability(const TaskSet& ts, std::size_t k) {
  if (ts.utilization_through(k) > 1.0) return Verdict::inapplicable();
  const Task& task = ts.tasks.at(k);
  const double rhs =
      k2q::quadratic_rhs(response_terms(ts, k), task.deadline);
  return task.wcet / task.deadline <= rhs ? Verdict::schedulable(rhs)
                                          : Verdict::not_proven(rhs);
}

}  // namespace ksched::uniproc
