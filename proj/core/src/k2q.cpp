#include "ksched/k2q.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ksched::k2q {

namespace {

double sum_alpha_util(const std::vector<Term>& higher) {
  double s = 0.0;
  for (const Term& t : higher) s += t.alpha * t.util;
  return s;
}

double sum_beta_wcet(const std::vector<Term>& higher) {
  double s = 0.0;
  for (const Term& t : higher) s += t.beta * t.wcet;
  return s;
}

// sum_i (beta_i*C_i - alpha_i*U_i * sum_{l>=i} beta_l*C_l)
double cross_term(const std::vector<Term>& higher) {
  double sum = 0.0;
  double suffix = 0.0;
  for (auto it = higher.rbegin(); it != higher.rend(); ++it) {
    suffix += it->beta * it->wcet;
    sum += it->beta * it->wcet - it->alpha * it->util * suffix;
  }
  return sum;
}

}  // namespace

double quadratic_rhs(const std::vector<Term>& higher, double tk) {
  return 1.0 - sum_alpha_util(higher) - cross_term(higher) / tk;
}

Verdict quadratic_test(const Instance& inst) {
  if (sum_alpha_util(inst.higher) > 1.0) return Verdict::inapplicable();
  if (sum_beta_wcet(inst.higher) > inst.tk) return Verdict::inapplicable();
  const double rhs = quadratic_rhs(inst.higher, inst.tk);
  const double ratio = inst.ck / inst.tk;
  return ratio <= rhs ? Verdict::schedulable(rhs) : Verdict::not_proven(rhs);
}

std::vector<std::size_t> worst_case_ordering(const std::vector<Term>& higher) {
  std::vector<std::size_t> perm(higher.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto ratio = [&](std::size_t i) {
    return higher[i].beta * higher[i].wcet / (higher[i].alpha * higher[i].util);
  };
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    const double ra = ratio(a), rb = ratio(b);
    if (ra != rb) return ra > rb;
    return higher[a].id < higher[b].id;
  });
  return perm;
}

double uniform_quadratic_rhs(const std::vector<Term>& higher, double alpha,
                             double beta) {
  double sum_u = 0.0;
  double cross = 0.0;
  double suffix = 0.0;
  for (auto it = higher.rbegin(); it != higher.rend(); ++it) {
    suffix += it->util;
    cross += it->util * suffix;
    sum_u += it->util;
  }
  return 1.0 - (alpha + beta) * sum_u + alpha * beta * cross;
}

Verdict uniform_quadratic_test(const Instance& inst, double alpha,
                               double beta) {
  double sum_u = 0.0;
  for (const Term& t : inst.higher) {
    if (t.alpha > alpha) return Verdict::inapplicable();
    if (t.beta * t.wcet > beta * t.util * inst.tk) return Verdict::inapplicable();
    sum_u += t.util;
  }
  if (alpha * sum_u > 1.0 || beta * sum_u > 1.0) return Verdict::inapplicable();
  const double rhs = uniform_quadratic_rhs(inst.higher, alpha, beta);
  const double ratio = inst.ck / inst.tk;
  return ratio <= rhs ? Verdict::schedulable(rhs) : Verdict::not_proven(rhs);
}

double utilization_sum_bound(double ck_over_tk, double alpha, double beta,
                             long long k) {
  if (k < 2) throw std::invalid_argument("utilization_sum_bound: k < 2");
  const double ab = alpha + beta;
  const double kk = double(k) / double(k - 1);
  const double disc = ab * ab - 2.0 * alpha * beta * (1.0 - ck_over_tk) * kk;
  if (disc < 0.0)
    throw NegativeDiscriminantError("utilization_sum_bound: negative radicand");
  return (1.0 / kk) * (ab - std::sqrt(disc)) / (alpha * beta);
}

double combined_utilization_bound(double alpha, double beta, long long k) {
  if (alpha + beta < 1.0)
    throw std::invalid_argument(
        "combined_utilization_bound: alpha + beta < 1");
  if (k < 2) throw std::invalid_argument("combined_utilization_bound: k < 2");
  const double ab = alpha + beta;
  const double sq = alpha * alpha + beta * beta;
  if (sq > 1.0 && double(k) > (ab * ab - 1.0) / (sq - 1.0)) {
    const double kk = double(k) / double(k - 1);
    const double disc = ab * ab - 2.0 * alpha * beta * kk;
    return (1.0 / kk) * (ab - std::sqrt(disc)) / (alpha * beta);
  }
  return 1.0 + double(k - 1) * ((ab - 1.0) - 0.5 * ab * ab + 0.5) /
                   (double(k) * alpha * beta);
}

double response_bound(const std::vector<Term>& higher, double ck) {
  const double au = sum_alpha_util(higher);
  if (au >= 1.0) return std::numeric_limits<double>::infinity();
  // cross_term already equals sum beta_i*C_i - sum alpha_i*U_i*S_i.
  return (ck + cross_term(higher)) / (1.0 - au);
}

}  // namespace ksched::k2q
