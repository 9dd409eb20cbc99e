#include "ksched/multiproc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ksched/k2q.hpp"
#include "ksched/k2u.hpp"

namespace ksched::multiproc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_preconditions(const TaskSet& ts, std::size_t k, int m) {
  if (m < 1) throw std::invalid_argument("global test: m < 1");
  if (k >= ts.size()) throw std::out_of_range("global test: bad task index");
  for (std::size_t i = 0; i <= k; ++i) {
    if (ts[i].deadline != ts[i].period)
      throw std::invalid_argument("global test: set is not implicit-deadline");
    if (ts[i].period > ts[k].period)
      throw std::invalid_argument("global test: tasks are not RM-ordered");
  }
}

// Fewer than m higher-priority tasks: the task always runs as soon as
// it is released, so U_k <= 1 suffices.
bool trivially_schedulable(std::size_t k, int m) {
  return k < std::size_t(m);
}

Verdict trivial_verdict(const TaskSet& ts, std::size_t k) {
  return ts[k].utilization() <= 1.0 ? Verdict::schedulable(1.0)
                                    : Verdict::not_proven(1.0);
}

// Indices of the (at most m-1) higher-priority tasks with the largest
// value of `key`; ties by ascending id.
template <typename Key>
std::vector<std::size_t> top_m_minus_1(const TaskSet& ts, std::size_t k,
                                       int m, Key key) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (key(ts[a]) != key(ts[b])) return key(ts[a]) > key(ts[b]);
    return ts[a].id < ts[b].id;
  });
  idx.resize(std::min<std::size_t>(idx.size(), std::size_t(m - 1)));
  return idx;
}

double carry_in_wcet_sum(const TaskSet& ts, std::size_t k, int m) {
  double sum = 0.0;
  for (std::size_t i :
       top_m_minus_1(ts, k, m, [](const Task& t) { return t.wcet; }))
    sum += ts[i].wcet;
  return sum;
}

// Least t in (0, T_k] with demand(t) <= t, by fixed-point iteration from
// the demand at t -> 0+. Returns the witness or +infinity.
template <typename Demand>
double least_witness(double start, double limit, Demand demand) {
  double t = start;
  for (;;) {
    const double next = demand(t);
    if (next <= t) return t <= limit ? t : kInf;
    if (next > limit) return kInf;
    t = next;
  }
}

double hp_sum_util(const TaskSet& ts, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += ts[i].utilization();
  return s;
}

// Extreme point (ceil(T_k/T_i) - 1)*T_i and carry-in flags for the
// higher-priority tasks, ordered by non-decreasing (t_i, U_i, id).
struct GlobalEpEntry {
  double t = 0.0;
  bool carry_in = false;
  Task task;
};

std::vector<GlobalEpEntry> global_extreme_points(const TaskSet& ts,
                                                 std::size_t k, int m) {
  std::vector<bool> carry(k, false);
  for (std::size_t i : top_m_minus_1(
           ts, k, m, [](const Task& t) { return t.utilization(); }))
    carry[i] = true;
  std::vector<GlobalEpEntry> out;
  out.reserve(k);
  const double tk = ts[k].period;
  for (std::size_t i = 0; i < k; ++i) {
    const double mi = std::ceil(tk / ts[i].period) - 1.0;
    out.push_back({mi * ts[i].period, carry[i], ts[i]});
  }
  std::sort(out.begin(), out.end(),
            [](const GlobalEpEntry& a, const GlobalEpEntry& b) {
              if (a.t != b.t) return a.t < b.t;
              if (a.task.utilization() != b.task.utilization())
                return a.task.utilization() < b.task.utilization();
              return a.task.id < b.task.id;
            });
  return out;
}

}  // namespace

double capacity_augmentation_threshold() { return 3.0 - std::sqrt(7.0); }

Verdict greedy_carryin_pseudo(const TaskSet& ts, std::size_t k, int m) {
  check_preconditions(ts, k, m);
  if (trivially_schedulable(k, m)) return trivial_verdict(ts, k);
  const Task& task = ts[k];
  auto demand = [&](double t) {
    double d = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      d += std::ceil(t / ts[i].period) * ts[i].wcet + ts[i].wcet;
    return task.wcet + d / m;
  };
  const double witness = least_witness(demand(0.0), task.period, demand);
  return std::isinf(witness) ? Verdict::not_proven(witness)
                             : Verdict::schedulable(witness);
}

Verdict bounded_carryin_pseudo(const TaskSet& ts, std::size_t k, int m) {
  check_preconditions(ts, k, m);
  if (trivially_schedulable(k, m)) return trivial_verdict(ts, k);
  const Task& task = ts[k];
  const double carry = carry_in_wcet_sum(ts, k, m);
  auto demand = [&](double t) {
    double d = carry;
    for (std::size_t i = 0; i < k; ++i)
      d += std::ceil(t / ts[i].period) * ts[i].wcet;
    return task.wcet + d / m;
  };
  const double witness = least_witness(demand(0.0), task.period, demand);
  return std::isinf(witness) ? Verdict::not_proven(witness)
                             : Verdict::schedulable(witness);
}

Verdict hp_gc_test(const TaskSet& ts, std::size_t k, int m) {
  check_preconditions(ts, k, m);
  if (trivially_schedulable(k, m)) return trivial_verdict(ts, k);
  k2u::Instance inst;
  inst.ck = ts[k].wcet;
  inst.tk = ts[k].period;
  for (std::size_t i = 0; i < k; ++i)
    inst.higher.push_back({2.0 / m, 1.0 / m, ts[i].utilization()});
  const Verdict hyper = k2u::hyperbolic_test(inst, 2.0 / m, 1.0 / m);
  if (hyper.ok()) return hyper;
  const double bound =
      k2u::exclusive_utilization_bound(ts[k].utilization(), 2.0 / m, 1.0 / m);
  if (hp_sum_util(ts, k) <= bound) return Verdict::schedulable(bound);
  return hyper;
}

Verdict hp_bc_test(const TaskSet& ts, std::size_t k, int m) {
  check_preconditions(ts, k, m);
  if (trivially_schedulable(k, m)) return trivial_verdict(ts, k);
  k2u::Instance inst;
  inst.ck = ts[k].wcet + carry_in_wcet_sum(ts, k, m) / m;
  inst.tk = ts[k].period;
  for (std::size_t i = 0; i < k; ++i)
    inst.higher.push_back({1.0 / m, 1.0 / m, ts[i].utilization()});
  const Verdict hyper = k2u::hyperbolic_test(inst, 1.0 / m, 1.0 / m);
  if (hyper.ok()) return hyper;
  const double bound = k2u::exclusive_utilization_bound(
      inst.ck / inst.tk, 1.0 / m, 1.0 / m);
  if (hp_sum_util(ts, k) <= bound) return Verdict::schedulable(bound);
  return hyper;
}

Verdict hp_bc2_test(const TaskSet& ts, std::size_t k, int m) {
  check_preconditions(ts, k, m);
  if (trivially_schedulable(k, m)) return trivial_verdict(ts, k);
  std::vector<Task> hp(ts.tasks.begin(), ts.tasks.begin() + k);
  std::sort(hp.begin(), hp.end(), [](const Task& a, const Task& b) {
    if (a.utilization() != b.utilization())
      return a.utilization() < b.utilization();
    return a.id < b.id;
  });
  k2u::Instance inst;
  inst.ck = ts[k].wcet;
  inst.tk = ts[k].period;
  const std::size_t carry_from = hp.size() - std::size_t(m - 1);
  for (std::size_t i = 0; i < hp.size(); ++i) {
    const double alpha = i >= carry_from ? 2.0 / m : 1.0 / m;
    inst.higher.push_back({alpha, 1.0 / m, hp[i].utilization()});
  }
  return k2u::extreme_point_test(inst);
}

Verdict hp_bc_ep_test(const TaskSet& ts, std::size_t k, int m) {
  check_preconditions(ts, k, m);
  if (trivially_schedulable(k, m)) return trivial_verdict(ts, k);
  k2u::Instance inst;
  inst.ck = ts[k].wcet;
  inst.tk = ts[k].period;
  for (const GlobalEpEntry& e : global_extreme_points(ts, k, m)) {
    if (e.t <= 0.0) {
      // Equal periods: one full job per window plus a possible carry-in
      // job, charged unconditionally to stay safe.
      inst.ck += 2.0 * e.task.wcet / m;
      continue;
    }
    const double mi = e.t / e.task.period;
    const double beta = std::min(1.0 / m, 1.0 / (m * mi));
    inst.higher.push_back({1.0 / m, beta, e.task.utilization()});
  }
  // The identity of the carry-in tasks is unknown, so the test must hold
  // for every choice of m-1 of them. The bound is linear in each alpha_i
  // with weight U_i over the suffix product, so the worst assignment
  // raises alpha to 2/m for the m-1 entries with the largest weight.
  // (With uniform beta and utilization-sorted entries this is exactly
  // the largest-utilization rule.)
  const std::size_t n = inst.higher.size();
  std::vector<double> weight(n);
  double suffix = 1.0;
  for (std::size_t i = n; i-- > 0;) {
    suffix *= inst.higher[i].beta * inst.higher[i].util + 1.0;
    weight[i] = inst.higher[i].util / suffix;
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (weight[a] != weight[b]) return weight[a] > weight[b];
    return a < b;
  });
  for (std::size_t i = 0; i < idx.size() && i < std::size_t(m - 1); ++i)
    inst.higher[idx[i]].alpha = 2.0 / m;
  return k2u::extreme_point_test(inst);
}

Verdict qb_bc_test(const TaskSet& ts, std::size_t k, int m) {
  check_preconditions(ts, k, m);
  if (trivially_schedulable(k, m)) return trivial_verdict(ts, k);
  k2q::Instance inst;
  const double carry = carry_in_wcet_sum(ts, k, m);
  inst.ck = ts[k].wcet + carry / m;
  inst.tk = ts[k].period;
  for (const GlobalEpEntry& e : global_extreme_points(ts, k, m))
    inst.higher.push_back(
        {1.0 / m, 1.0 / m, e.task.utilization(), e.task.wcet, e.task.id});
  const Verdict v = k2q::quadratic_test(inst);
  if (v.outcome == Outcome::inapplicable) return v;
  // Report the bound in its U_k <= ... form, with the folded carry-in
  // moved back to the right-hand side.
  return Verdict{v.outcome, v.bound - carry / (m * inst.tk)};
}

Verdict qb_ff_test(const TaskSet& ts, std::size_t k, int m) {
  check_preconditions(ts, k, m);
  if (trivially_schedulable(k, m)) return trivial_verdict(ts, k);
  double u_max = 0.0;
  for (std::size_t i = 0; i <= k; ++i)
    u_max = std::max(u_max, ts[i].utilization());
  std::vector<Task> hp(ts.tasks.begin(), ts.tasks.begin() + k);
  std::sort(hp.begin(), hp.end(), [](const Task& a, const Task& b) {
    if (a.period != b.period) return a.period > b.period;
    return a.id < b.id;
  });
  std::vector<k2q::Term> terms;
  terms.reserve(hp.size());
  for (const Task& t : hp)
    terms.push_back({1.0 / m, 1.0 / m, t.utilization(), t.wcet, t.id});
  const double rhs = k2q::quadratic_rhs(terms, ts[k].period);
  return u_max <= rhs ? Verdict::schedulable(rhs) : Verdict::not_proven(rhs);
}

Verdict qb_ff2_test(const TaskSet& ts, std::size_t k, int m) {
  check_preconditions(ts, k, m);
  if (trivially_schedulable(k, m)) return trivial_verdict(ts, k);
  double u_max = 0.0;
  for (std::size_t i = 0; i <= k; ++i)
    u_max = std::max(u_max, ts[i].utilization());
  double sum_u = 0.0, sum_u2 = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double u = ts[i].utilization();
    sum_u += u;
    sum_u2 += u * u;
  }
  const double rhs = 1.0 - (2.0 / m) * sum_u +
                     (0.5 / (double(m) * m)) * (sum_u * sum_u + sum_u2);
  if (u_max <= rhs) return Verdict::schedulable(rhs);
  if (k >= 1) {
    // k-1 higher-priority tasks exist, so the utilization-sum form with
    // paper index kk = k+1 >= 2 is well-defined.
    const double kk = double(k + 1);
    const double alt =
        ((kk - 1.0) / kk) * (2.0 - std::sqrt(2.0 + 2.0 * u_max * kk / (kk - 1.0)));
    if (sum_u / m <= alt) return Verdict::schedulable(rhs);
  }
  return Verdict::not_proven(rhs);
}

Verdict capacity_augmentation_check(const TaskSet& ts, int m) {
  if (m < 1) throw std::invalid_argument("capacity check: m < 1");
  for (const Task& t : ts.tasks)
    if (t.deadline != t.period)
      throw std::invalid_argument(
          "capacity check: set is not implicit-deadline");
  const double threshold = capacity_augmentation_threshold();
  const bool ok = ts.total_utilization() / m <= threshold &&
                  ts.max_utilization() <= threshold;
  return ok ? Verdict::schedulable(threshold)
            : Verdict::not_proven(threshold);
}

}  // namespace ksched::multiproc
