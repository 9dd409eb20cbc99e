#pragma once

#include <vector>

#include "ksched/verdict.hpp"

namespace ksched::k2u {

/// One higher-priority entry of a k-point effective schedulability test
/// instance. The test points t_i themselves are folded into the
/// coefficients; only the coefficient pair and the utilization remain.
struct Term {
  double alpha = 1.0;
  double beta = 1.0;
  double util = 0.0;
};

/// Instance of a k-point effective schedulability test: k-1 higher-priority
/// terms (ordered by non-decreasing test point t_i), the analyzed demand
/// c_k and the last test point t_k.
struct Instance {
  std::vector<Term> higher;
  double ck = 0.0;
  double tk = 1.0;
};

/// Hyperbolic test under uniform coefficient caps alpha and beta:
///
///   c_k/t_k <= (alpha/beta + 1) / prod_j(beta*U_j + 1) - alpha/beta
///
/// Inapplicable when a per-term coefficient exceeds its cap. The verdict
/// carries the right-hand side.
Verdict hyperbolic_test(const Instance& inst, double alpha, double beta);

/// Total-utilization bound under uniform caps:
///
///   ((k-1)*((alpha+beta)^(1/k) - 1) + ((alpha+beta)^(1/k) - alpha)) / beta
///
/// The caller accepts when c_k/t_k + sum(U_i) does not exceed the returned
/// value. For alpha = beta = 1 this is exactly k*(2^(1/k) - 1).
double uniform_utilization_bound(long long k, double alpha, double beta);

/// Bound on sum(U_i) alone for a given demand ratio c_k/t_k:
///
///   (1/beta) * ln((alpha/beta + 1) / (c_k/t_k + alpha/beta))
///
/// Only meaningful for c_k/t_k in (0, 1]; larger ratios are rejected
/// upstream by the callers.
double exclusive_utilization_bound(double ck_over_tk, double alpha,
                                   double beta);

/// Per-term test at the extreme point, without coefficient caps:
///
///   0 < c_k/t_k <= 1 - sum_i U_i*(alpha_i + beta_i)
///                          / prod_{j>=i}(beta_j*U_j + 1)
///
/// Terms must be ordered by non-decreasing test point.
Verdict extreme_point_test(const Instance& inst);

/// Right-hand side of extreme_point_test, exposed for bound comparisons.
double extreme_point_rhs(const std::vector<Term>& higher);

/// Numeric k->infinity limit of uniform_utilization_bound, evaluated at
/// k = 10^7 (converges well within 1e-5). Throws std::invalid_argument
/// unless alpha > 0 and beta > 0.
double limit_bound(double alpha, double beta);

}  // namespace ksched::k2u
