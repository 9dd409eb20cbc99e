#pragma once

// Shared generators and brute-force oracles for the test suites. The
// oracles here are intentionally independent of the library's closed
// forms: permutations are enumerated exhaustively and formulas are
// re-derived term by term.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ksched/k2q.hpp"
#include "ksched/task.hpp"
#include "ksched/workload.hpp"

namespace testutil {

using ksched::workload::Rng;

// Eq-by-definition evaluation of the quadratic right-hand side for a
// fixed term order: 1 - sum a_i u_i - (sum_i (b_i c_i - a_i u_i S_i))/tk.
inline double quadratic_rhs_reference(const std::vector<ksched::k2q::Term>& v,
                                      double tk) {
  double sum_au = 0.0;
  double inner = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double suffix = 0.0;
    for (std::size_t l = i; l < v.size(); ++l) suffix += v[l].beta * v[l].wcet;
    inner += v[i].beta * v[i].wcet - v[i].alpha * v[i].util * suffix;
    sum_au += v[i].alpha * v[i].util;
  }
  return 1.0 - sum_au - inner / tk;
}

inline double response_bound_reference(const std::vector<ksched::k2q::Term>& v,
                                       double ck) {
  double sum_au = 0.0;
  double num = ck;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double suffix = 0.0;
    for (std::size_t l = i; l < v.size(); ++l) suffix += v[l].beta * v[l].wcet;
    num += v[i].beta * v[i].wcet - v[i].alpha * v[i].util * suffix;
    sum_au += v[i].alpha * v[i].util;
  }
  return num / (1.0 - sum_au);
}

template <typename Fn>
void for_each_permutation(std::vector<ksched::k2q::Term> terms, Fn&& fn) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  do {
    fn(terms);
  } while (std::next_permutation(
      terms.begin(), terms.end(),
      [](const auto& a, const auto& b) { return a.id < b.id; }));
}

inline std::vector<ksched::k2q::Term> random_terms(Rng& rng, int count,
                                                   bool unit_coefficients) {
  std::vector<ksched::k2q::Term> terms(count);
  for (int i = 0; i < count; ++i) {
    terms[i].alpha = unit_coefficients ? 1.0 : rng.uniform(0.1, 2.0);
    terms[i].beta = unit_coefficients ? 1.0 : rng.uniform(0.1, 2.0);
    terms[i].util = rng.uniform(0.05, 0.95);
    terms[i].wcet = rng.uniform(0.01, 2.0);
    terms[i].id = i;
  }
  return terms;
}

inline ksched::TaskSet random_taskset(std::uint64_t seed, int n, double util,
                                      ksched::DeadlineModel model,
                                      int period_magnitude = 1) {
  ksched::workload::GenConfig cfg;
  cfg.n = n;
  cfg.target_util = util;
  cfg.period_magnitude = period_magnitude;
  cfg.deadline_model = model;
  cfg.seed = seed;
  return ksched::workload::make_taskset(cfg);
}

// Spearman rank correlation; average ranks for ties.
inline double spearman(const std::vector<double>& xs,
                       const std::vector<double>& ys) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < idx.size()) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * (double(i) + double(j));
      for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> rx = ranks(xs), ry = ranks(ys);
  const double n = double(rx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) mx += rx[i], my += ry[i];
  mx /= n;
  my /= n;
  double num = 0, dx = 0, dy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

}  // namespace testutil
