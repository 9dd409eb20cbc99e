#include "ksched/k2u.hpp"

#include <cmath>
#include <stdexcept>

namespace ksched::k2u {

Verdict hyperbolic_test(const Instance& inst, double alpha, double beta) {
  for (const Term& t : inst.higher) {
    if (t.alpha > alpha || t.beta > beta) return Verdict::inapplicable();
  }
  double prod = 1.0;
  for (const Term& t : inst.higher) prod *= beta * t.util + 1.0;
  const double ab = alpha / beta;
  const double rhs = (ab + 1.0) / prod - ab;
  const double ratio = inst.ck / inst.tk;
  return ratio <= rhs ? Verdict::schedulable(rhs) : Verdict::not_proven(rhs);
}

double uniform_utilization_bound(long long k, double alpha, double beta) {
  if (k < 1) throw std::invalid_argument("uniform_utilization_bound: k < 1");
  const double g = std::pow(alpha + beta, 1.0 / double(k));
  // (k-1)*(g-1) + (g-alpha) regrouped as k*(g-1) + (1-alpha) so the
  // alpha = beta = 1 case evaluates bit-exactly to k*(2^(1/k)-1).
  return (double(k) * (g - 1.0) + (1.0 - alpha)) / beta;
}

double exclusive_utilization_bound(double ck_over_tk, double alpha,
                                   double beta) {
  const double ab = alpha / beta;
  return std::log((ab + 1.0) / (ck_over_tk + ab)) / beta;
}

double extreme_point_rhs(const std::vector<Term>& higher) {
  // Suffix products prod_{j>=i}(beta_j*U_j + 1), consumed back to front.
  double sum = 0.0;
  double suffix = 1.0;
  for (auto it = higher.rbegin(); it != higher.rend(); ++it) {
    suffix *= it->beta * it->util + 1.0;
    sum += it->util * (it->alpha + it->beta) / suffix;
  }
  return 1.0 - sum;
}

Verdict extreme_point_test(const Instance& inst) {
  const double rhs = extreme_point_rhs(inst.higher);
  const double ratio = inst.ck / inst.tk;
  return (ratio > 0.0 && ratio <= rhs) ? Verdict::schedulable(rhs)
                                       : Verdict::not_proven(rhs);
}

double limit_bound(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("limit_bound: alpha and beta must be positive");
  return uniform_utilization_bound(10'000'000, alpha, beta);
}

}  // namespace ksched::k2u
