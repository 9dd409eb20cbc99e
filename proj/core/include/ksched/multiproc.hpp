#pragma once

#include <cstddef>
#include <vector>

#include "ksched/task.hpp"
#include "ksched/verdict.hpp"

namespace ksched::multiproc {

/// All tests below analyze task k of an implicit-deadline set under
/// global rate-monotonic scheduling on m identical processors. The set
/// must be RM-ordered through index k (std::invalid_argument otherwise).
/// A task with fewer than m higher-priority tasks is schedulable
/// whenever U_k <= 1; the tests apply that rule before anything else.

/// Pseudo-polynomial test charging one carry-in job to every
/// higher-priority task: accepts when some 0 < t <= T_k satisfies
///   C_k + sum_i ((ceil(t/T_i) - 1)*C_i + 2*C_i) / m <= t.
Verdict greedy_carryin_pseudo(const TaskSet& ts, std::size_t k, int m);

/// Pseudo-polynomial test charging carry-in to only the m-1 tasks with
/// the largest execution times (set T'):
///   C_k + (sum_{T'} C_i + sum_i ceil(t/T_i)*C_i) / m <= t.
Verdict bounded_carryin_pseudo(const TaskSet& ts, std::size_t k, int m);

/// Hyperbolic relaxation of the greedy carry-in test:
///   (U_k + 2) * prod(U_i/m + 1) <= 3, or
///   sum U_i/m <= ln(3 / (U_k + 2)).
Verdict hp_gc_test(const TaskSet& ts, std::size_t k, int m);

/// Hyperbolic relaxation of the bounded carry-in test with the carry-in
/// demand folded into the analyzed task, c' = C_k + sum_{T'} C_i / m:
///   (c'/T_k + 1) * prod(U_i/m + 1) <= 2, or
///   sum U_i/m <= ln(2 / (c'/T_k + 1)).
Verdict hp_bc_test(const TaskSet& ts, std::size_t k, int m);

/// Extreme-point form of the bounded carry-in test with carry-in charged
/// through the coefficients: tasks ordered by non-decreasing U_i, the m-1
/// largest-utilization tasks get alpha = 2/m, the rest 1/m, all beta = 1/m:
///   U_k <= 1 - sum_i U_i*(alpha_i + 1/m) / prod_{j>=i}(U_j/m + 1).
Verdict hp_bc2_test(const TaskSet& ts, std::size_t k, int m);

/// Refinement of hp_bc2_test with per-task extreme points
/// t_i = (ceil(T_k/T_i) - 1)*T_i and beta_i = 1/(m*(ceil(T_k/T_i) - 1)),
/// tasks ordered by non-decreasing t_i. Carry-in alpha = 2/m goes to the
/// m-1 tasks for which the assignment is worst (largest U_i over suffix
/// product); with uniform beta this is the largest-utilization rule of
/// hp_bc2_test.
Verdict hp_bc_ep_test(const TaskSet& ts, std::size_t k, int m);

/// Quadratic form of the bounded carry-in test, tasks ordered by
/// non-decreasing (ceil(T_k/T_i) - 1)*T_i:
///   U_k <= 1 - sum_{T'} C_i/(m*T_k) - sum U_i/m - sum C_i/(m*T_k)
///            + sum_i U_i*(sum_{l>=i} C_l) / (m^2*T_k).
/// Inapplicable when sum_{i<k} C_i > m*T_k.
Verdict qb_bc_test(const TaskSet& ts, std::size_t k, int m);

/// Quadratic test derived from the forced-forward formulation, with
/// U_k^max = max_{j<=k} U_j and tasks ordered by non-increasing T_i:
///   U_k^max <= 1 - sum U_i/m - sum C_i/(m*T_k)
///                + sum_i U_i*(sum_{l>=i} C_l) / (m^2*T_k).
Verdict qb_ff_test(const TaskSet& ts, std::size_t k, int m);

/// Utilization-only companion of qb_ff_test: accepts when
///   U_k^max <= 1 - (2/m)*sum U_i + (0.5/m^2)*((sum U_i)^2 + sum U_i^2)
/// or, for k >= 2,
///   sum U_i/m <= ((k-1)/k) * (2 - sqrt(2 + 2*U_k^max*k/(k-1))).
Verdict qb_ff2_test(const TaskSet& ts, std::size_t k, int m);

/// Capacity-augmentation check for the whole set: schedulable when both
/// sum U_i/m and max U_i stay within 2/(3+sqrt(7)), in which case
/// qb_ff2_test accepts every task.
Verdict capacity_augmentation_check(const TaskSet& ts, int m);

/// The capacity bound 2/(3+sqrt(7)) = 3 - sqrt(7).
double capacity_augmentation_threshold();

}  // namespace ksched::multiproc
