#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ksched/task.hpp"
#include "ksched/verdict.hpp"
#include "ksched/workload.hpp"

namespace ksched::experiment {

struct UnknownTestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Names of every registered schedulability test.
std::vector<std::string> registered_tests();

/// True when `name` can run on a set with the given deadline model and
/// processor count.
bool test_applicable(const std::string& name, DeadlineModel model, int m);

/// Set-level verdict of one named test: schedulable iff every task
/// passes. Throws UnknownTestError / ModelMismatchError on bad requests.
Outcome run_named_test(const std::string& name, const TaskSet& ts, int m);

/// Set-level verdicts for a list of tests on one task set.
std::map<std::string, Outcome> run_test_suite(const TaskSet& ts,
                                              const std::vector<std::string>& tests,
                                              int m);

struct SweepConfig {
  double util_from = 0.05;
  double util_to = 1.0;
  double util_step = 0.01;
  int sets_per_level = 100;
  workload::GenConfig gen;
  std::vector<std::string> tests;
  int processors = 1;
  int threads = 1;
};

struct CurveRow {
  double util = 0.0;
  std::string test;
  int accepted = 0;
  int total = 0;

  double ratio() const { return total == 0 ? 0.0 : double(accepted) / total; }
};

/// Acceptance ratios per (utilization level, test), rows sorted by
/// (util, test).
struct AcceptanceCurve {
  std::vector<CurveRow> rows;

  /// Ratio column of one test across levels, in level order.
  std::vector<double> ratios_for(const std::string& test) const;
};

/// Utilization levels of a sweep, from util_from to util_to inclusive.
std::vector<double> sweep_levels(const SweepConfig& cfg);

/// Runs the sweep: per level, sets_per_level sets are generated with
/// target utilization level*m (normalized convention for m > 1) and each
/// requested test is tabulated at set level. Work is split across
/// cfg.threads workers; the per-set seed streams make the result
/// independent of the worker count.
AcceptanceCurve run_sweep(const SweepConfig& cfg);

/// CSV with header "util,test,accepted,total,ratio", rows sorted by
/// (util, test), six decimals, newline-terminated.
std::string emit_csv(const AcceptanceCurve& curve);

/// Inverse of emit_csv; throws std::runtime_error on malformed input.
AcceptanceCurve parse_csv(const std::string& text);

/// One row of the two-task comparison scan: for a period ratio T1/T2
/// (with T2 = 1 implicit-deadline under RM), the largest admissible U_2
/// under the hyperbolic test, the utilization-only quadratic test and
/// the general quadratic test.
struct Figure1Row {
  double ratio = 0.0;
  double t1 = 0.0;
  double c1 = 0.0;
  double u2_hyperbolic = 0.0;
  double u2_quadratic_util = 0.0;
  double u2_quadratic_general = 0.0;
};

std::vector<Figure1Row> figure1_scan(double u1,
                                     const std::vector<double>& ratio_grid);

/// CSV for figure1_scan: "ratio,t1,c1,k2u_hyperbolic,k2q_uniform,k2q_general".
std::string emit_figure1_csv(const std::vector<Figure1Row>& rows);

}  // namespace ksched::experiment
