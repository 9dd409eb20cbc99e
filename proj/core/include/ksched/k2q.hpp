#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ksched/verdict.hpp"

namespace ksched::k2q {

/// One higher-priority entry of a k-point last-release test instance.
/// Unlike the k2u counterpart it carries the execution time, which the
/// quadratic forms charge independently of the test points.
struct Term {
  double alpha = 1.0;
  double beta = 1.0;
  double util = 0.0;
  double wcet = 0.0;
  int id = 0;
};

/// Instance of a k-point last-release schedulability test: k-1 terms in
/// last-release order (earliest first), demand c_k and final point t_k.
/// Response-time analysis ignores t_k.
struct Instance {
  std::vector<Term> higher;
  double ck = 0.0;
  double tk = 1.0;
};

/// Quadratic test with per-term coefficients:
///
///   c_k/t_k <= 1 - sum_i alpha_i*U_i
///                - [sum_i (beta_i*C_i - alpha_i*U_i * S_i)] / t_k
///
/// with S_i = sum_{l>=i} beta_l*C_l. Preconditions sum(alpha_i*U_i) <= 1
/// and sum(beta_i*C_i) <= t_k; otherwise inapplicable.
Verdict quadratic_test(const Instance& inst);

/// Right-hand side of quadratic_test for a given term order.
double quadratic_rhs(const std::vector<Term>& higher, double tk);

/// Permutation (indices into `higher`) that sorts terms by non-increasing
/// beta_i*C_i / (alpha_i*U_i); ties broken by ascending id. This ordering
/// minimizes the quadratic_test right-hand side and maximizes the
/// response bound over all last-release orderings.
std::vector<std::size_t> worst_case_ordering(const std::vector<Term>& higher);

/// Quadratic test under uniform caps alpha and beta:
///
///   c_k/t_k <= 1 - (alpha+beta)*sum(U_i)
///                + alpha*beta * sum_i U_i * (sum_{l>=i} U_l)
///
/// Preconditions: alpha_i <= alpha, beta_i*C_i <= beta*U_i*t_k per term,
/// alpha*sum(U_i) <= 1 and beta*sum(U_i) <= 1; otherwise inapplicable.
Verdict uniform_quadratic_test(const Instance& inst, double alpha,
                               double beta);

double uniform_quadratic_rhs(const std::vector<Term>& higher, double alpha,
                             double beta);

struct NegativeDiscriminantError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Bound on sum(U_i) alone for a given demand ratio:
///
///   ((k-1)/k) * (alpha+beta - sqrt((alpha+beta)^2
///                - 2*alpha*beta*(1 - c_k/t_k)*k/(k-1))) / (alpha*beta)
///
/// Throws NegativeDiscriminantError when the radicand is negative, which
/// cannot happen for c_k/t_k in [0, 1] and k >= 2.
double utilization_sum_bound(double ck_over_tk, double alpha, double beta,
                             long long k);

/// Bound on c_k/t_k + sum(U_i), piecewise in k:
///
///   first branch  ((k-1)/k)*(a+b - sqrt((a+b)^2 - 2ab*k/(k-1)))/(ab)
///                 when k > ((a+b)^2 - 1)/(a^2 + b^2 - 1) and a^2+b^2 > 1
///   second branch 1 + (k-1)*((a+b-1) - 0.5*(a+b)^2 + 0.5)/(k*a*b)
///
/// Requires alpha + beta >= 1 (std::invalid_argument otherwise) and
/// k >= 2. At a^2 + b^2 = 1 exactly the second branch applies.
double combined_utilization_bound(double alpha, double beta, long long k);

/// Response bound for executing c_k under the given terms:
///
///   (c_k + sum beta_i*C_i - sum alpha_i*U_i*S_i) / (1 - sum alpha_i*U_i)
///
/// Returns +infinity when sum(alpha_i*U_i) >= 1.
double response_bound(const std::vector<Term>& higher, double ck);

}  // namespace ksched::k2q
