#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ksched/task.hpp"
#include "ksched/verdict.hpp"

namespace ksched::uniproc {

/// Virtual task folding hp2 interference into the analyzed demand:
/// constrained mode uses c' = C_k + sum_{hp2} C_i, busy-window mode
/// uses c' = ceil(D_k/T_k)*C_k + sum_{hp2} C_i. The deadline D_k is
/// kept and hp1 carries the remaining interference.
struct VirtualTask {
  double c_prime = 0.0;
  double d = 0.0;
  std::vector<Task> hp1;
};

enum class VirtualMode { constrained, arbitrary };

VirtualTask make_virtual(const TaskSet& ts, std::size_t k, VirtualMode mode);

/// Result of the exact busy-window analysis. wcrt is +infinity when the
/// utilization exceeds one (divergent). cap_exceeded flags a window that
/// did not close within the job cap; the wcrt seen so far is reported
/// but must be treated as not proven.
struct RtaResult {
  double wcrt = 0.0;
  std::uint64_t iterations = 0;
  std::vector<std::pair<std::uint64_t, double>> per_job;
  bool cap_exceeded = false;

  bool divergent() const;
};

/// Job cap for the busy-window iteration.
inline constexpr std::uint64_t kBusyWindowJobCap = 1'000'000;

/// Exact time-demand analysis for a constrained-deadline task: least
/// fixed point of R = C_k + sum_{i<k} ceil(R/T_i)*C_i, accepted when it
/// stays within D_k. Throws std::invalid_argument if D_k > T_k.
/// The verdict bound carries the fixed point (the WCRT) when found.
Verdict tda_exact(const TaskSet& ts, std::size_t k, double* wcrt = nullptr);

/// Exact busy-window analysis for arbitrary deadlines: per-job finishing
/// times R_{k,h} until the window closes (R_{k,h} <= h*T_k); the WCRT is
/// max_h R_{k,h} - (h-1)*T_k.
RtaResult busy_window_exact(const TaskSet& ts, std::size_t k);

/// Sufficient busy-window-length test: accepts when the least t with
/// ceil(t/T_k)*C_k + sum_{i<k} ceil(t/T_i)*C_i <= t satisfies t <= D_k.
Verdict busy_window_length_test(const TaskSet& ts, std::size_t k);

/// Hyperbolic test (with the total-utilization fallback) on the virtual
/// task over hp1: accepts when
///   (c'/D_k + 1) * prod_{hp1}(U_j + 1) <= 2
/// or c'/D_k + sum_{hp1} U_j <= k*(2^(1/k*) - 1) with k* = |hp1| + 1.
Verdict hp_test(const TaskSet& ts, std::size_t k, VirtualMode mode);

/// Extreme-point refinement of hp_test: per-task coefficients from the
/// last full release before D_k, t_i = (ceil(D_k/T_i) - 1)*T_i, with
/// alpha_i = 1 and beta_i = 1/(ceil(D_k/T_i) - 1), hp1 ordered by
/// non-decreasing t_i.
Verdict hp_ep_test(const TaskSet& ts, std::size_t k, VirtualMode mode);

/// Quadratic test on the virtual task over hp1, ordered by non-decreasing
/// t_i = (ceil(D_k/T_i) - 1)*T_i; inapplicable when sum_{hp1} C_i > D_k.
Verdict qb_test(const TaskSet& ts, std::size_t k, VirtualMode mode);

/// Closed-form worst-case response time bound
///   (C_k + sum C_i - sum U_i*(sum_{l>=i} C_l)) / (1 - sum_{i<k} U_i)
/// with all higher-priority tasks ordered by non-increasing period.
/// Returns +infinity when sum_{i<=k} U_i > 1.
double qb_response_time(const TaskSet& ts, std::size_t k);

/// Linear response time bound
///   (C_k + sum C_i - sum U_i*C_i) / (1 - sum U_i),
/// +infinity when sum_{i<k} U_i >= 1.
double bini_response_bound(const TaskSet& ts, std::size_t k);

/// Schedulability form of qb_response_time: accepts when
///   C_k/D_k <= 1 - sum U_i - sum C_i/D_k + sum U_i*(sum_{l>=i} C_l)/D_k
/// (equivalently, the response bound stays within D_k). Inapplicable when
/// sum_{i<=k} U_i > 1.
Verdict qb_response_schedulability(const TaskSet& ts, std::size_t k);

}  // namespace ksched::uniproc
