#include "ksched/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "ksched/k2q.hpp"
#include "ksched/k2u.hpp"
#include "ksched/multiproc.hpp"
#include "ksched/uniproc.hpp"

namespace ksched::experiment {

namespace {

enum class TestId {
  tda,
  rta,
  bw_len,
  hp,
  hp_busy,
  hp_ep,
  qb,
  qb_busy,
  qb_response,
  bini,
  gc_pseudo,
  bc_pseudo,
  hp_gc,
  hp_bc,
  hp_bc2,
  hp_bc_ep,
  qb_bc,
  qb_ff,
  qb_ff2,
  cap,
};

struct TestDef {
  const char* name;
  TestId id;
  bool uniprocessor;          // runs with m == 1 only
  bool requires_constrained;  // rejects arbitrary-deadline sets
};

// Multiprocessor tests require implicit deadlines; uniprocessor tests
// take any model unless flagged, dispatching the virtual-task mode on it.
constexpr TestDef kTests[] = {
    {"TDA", TestId::tda, true, true},
    {"RTA", TestId::rta, true, false},
    {"BW-LEN", TestId::bw_len, true, false},
    {"HP", TestId::hp, true, false},
    {"HP-Busy", TestId::hp_busy, true, false},
    {"HP-EP", TestId::hp_ep, true, false},
    {"QB", TestId::qb, true, false},
    {"QB-Busy", TestId::qb_busy, true, false},
    {"QB-Response", TestId::qb_response, true, false},
    {"Bini", TestId::bini, true, false},
    {"GC-PSEUDO", TestId::gc_pseudo, false, false},
    {"BC-PSEUDO", TestId::bc_pseudo, false, false},
    {"HP-GC", TestId::hp_gc, false, false},
    {"HP-BC", TestId::hp_bc, false, false},
    {"HP-BC2", TestId::hp_bc2, false, false},
    {"HP-BC-EP", TestId::hp_bc_ep, false, false},
    {"QB-BC", TestId::qb_bc, false, false},
    {"QB-FF", TestId::qb_ff, false, false},
    {"QB-FF2", TestId::qb_ff2, false, false},
    {"CAP", TestId::cap, false, false},
};

const TestDef& find_test(const std::string& name) {
  for (const TestDef& def : kTests)
    if (name == def.name) return def;
  throw UnknownTestError("unknown test: " + name);
}

void check_applicable(const TestDef& def, DeadlineModel model, int m) {
  if (def.uniprocessor) {
    if (m != 1)
      throw ModelMismatchError(std::string(def.name) +
                               " is a uniprocessor test (m must be 1)");
    if (def.requires_constrained && model == DeadlineModel::arbitrary)
      throw ModelMismatchError(std::string(def.name) +
                               " requires D <= T for every task");
  } else {
    if (model != DeadlineModel::implicit)
      throw ModelMismatchError(std::string(def.name) +
                               " requires an implicit-deadline set");
  }
}

uniproc::VirtualMode mode_for(DeadlineModel model) {
  return model == DeadlineModel::arbitrary ? uniproc::VirtualMode::arbitrary
                                           : uniproc::VirtualMode::constrained;
}

Outcome eval_task(TestId id, const TaskSet& ts, std::size_t k, int m) {
  using uniproc::VirtualMode;
  switch (id) {
    case TestId::tda:
      return uniproc::tda_exact(ts, k).outcome;
    case TestId::rta: {
      const uniproc::RtaResult r = uniproc::busy_window_exact(ts, k);
      return (!r.cap_exceeded && r.wcrt <= ts[k].deadline)
                 ? Outcome::schedulable
                 : Outcome::not_proven;
    }
    case TestId::bw_len:
      return uniproc::busy_window_length_test(ts, k).outcome;
    case TestId::hp:
      return uniproc::hp_test(ts, k, mode_for(ts.model)).outcome;
    case TestId::hp_busy:
      return uniproc::hp_test(ts, k, VirtualMode::arbitrary).outcome;
    case TestId::hp_ep:
      return uniproc::hp_ep_test(ts, k, mode_for(ts.model)).outcome;
    case TestId::qb:
      return uniproc::qb_test(ts, k, mode_for(ts.model)).outcome;
    case TestId::qb_busy:
      return uniproc::qb_test(ts, k, VirtualMode::arbitrary).outcome;
    case TestId::qb_response:
      return uniproc::qb_response_schedulability(ts, k).outcome;
    case TestId::bini:
      return uniproc::bini_response_bound(ts, k) <= ts[k].deadline
                 ? Outcome::schedulable
                 : Outcome::not_proven;
    case TestId::gc_pseudo:
      return multiproc::greedy_carryin_pseudo(ts, k, m).outcome;
    case TestId::bc_pseudo:
      return multiproc::bounded_carryin_pseudo(ts, k, m).outcome;
    case TestId::hp_gc:
      return multiproc::hp_gc_test(ts, k, m).outcome;
    case TestId::hp_bc:
      return multiproc::hp_bc_test(ts, k, m).outcome;
    case TestId::hp_bc2:
      return multiproc::hp_bc2_test(ts, k, m).outcome;
    case TestId::hp_bc_ep:
      return multiproc::hp_bc_ep_test(ts, k, m).outcome;
    case TestId::qb_bc:
      return multiproc::qb_bc_test(ts, k, m).outcome;
    case TestId::qb_ff:
      return multiproc::qb_ff_test(ts, k, m).outcome;
    case TestId::qb_ff2:
      return multiproc::qb_ff2_test(ts, k, m).outcome;
    case TestId::cap:
      break;  // set-level, handled by the caller
  }
  throw UnknownTestError("eval_task: unhandled test");
}

Outcome run_def(const TestDef& def, const TaskSet& ts, int m) {
  check_applicable(def, ts.model, m);
  if (def.id == TestId::cap)
    return multiproc::capacity_augmentation_check(ts, m).outcome;
  bool inapplicable = false;
  bool not_proven = false;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    switch (eval_task(def.id, ts, k, m)) {
      case Outcome::schedulable: break;
      case Outcome::not_proven: not_proven = true; break;
      case Outcome::inapplicable: inapplicable = true; break;
    }
  }
  if (not_proven) return Outcome::not_proven;
  if (inapplicable) return Outcome::inapplicable;
  return Outcome::schedulable;
}

}  // namespace

std::vector<std::string> registered_tests() {
  std::vector<std::string> names;
  for (const TestDef& def : kTests) names.emplace_back(def.name);
  return names;
}

bool test_applicable(const std::string& name, DeadlineModel model, int m) {
  const TestDef& def = find_test(name);
  try {
    check_applicable(def, model, m);
  } catch (const ModelMismatchError&) {
    return false;
  }
  return true;
}

Outcome run_named_test(const std::string& name, const TaskSet& ts, int m) {
  return run_def(find_test(name), ts, m);
}

std::map<std::string, Outcome> run_test_suite(
    const TaskSet& ts, const std::vector<std::string>& tests, int m) {
  std::map<std::string, Outcome> out;
  for (const std::string& name : tests)
    out[name] = run_named_test(name, ts, m);
  return out;
}

std::vector<double> AcceptanceCurve::ratios_for(const std::string& test) const {
  std::vector<double> out;
  for (const CurveRow& row : rows)
    if (row.test == test) out.push_back(row.ratio());
  return out;
}

std::vector<double> sweep_levels(const SweepConfig& cfg) {
  if (!(cfg.util_step > 0.0))
    throw std::invalid_argument("sweep: step must be positive");
  if (cfg.util_from > cfg.util_to)
    throw std::invalid_argument("sweep: util_from > util_to");
  std::vector<double> levels;
  const long long count =
      (long long)std::floor((cfg.util_to - cfg.util_from) / cfg.util_step +
                            0.5) +
      1;
  for (long long i = 0; i < count; ++i)
    levels.push_back(cfg.util_from + double(i) * cfg.util_step);
  return levels;
}

AcceptanceCurve run_sweep(const SweepConfig& cfg) {
  if (cfg.sets_per_level < 1)
    throw std::invalid_argument("sweep: sets_per_level < 1");
  if (cfg.processors < 1) throw std::invalid_argument("sweep: processors < 1");
  if (cfg.tests.empty()) throw std::invalid_argument("sweep: no tests given");

  std::vector<const TestDef*> defs;
  for (const std::string& name : cfg.tests) {
    const TestDef& def = find_test(name);
    check_applicable(def, cfg.gen.deadline_model, cfg.processors);
    defs.push_back(&def);
  }

  const std::vector<double> levels = sweep_levels(cfg);
  const std::size_t jobs = levels.size() * std::size_t(cfg.sets_per_level);
  std::vector<std::atomic<int>> accepted(levels.size() * defs.size());
  for (auto& a : accepted) a.store(0, std::memory_order_relaxed);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t j = next.fetch_add(1, std::memory_order_relaxed);
        if (j >= jobs) return;
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (error) return;
        }
        const std::size_t level_i = j / std::size_t(cfg.sets_per_level);
        workload::GenConfig gen = cfg.gen;
        gen.target_util = levels[level_i] * cfg.processors;
        gen.seed = workload::stream_seed(cfg.gen.seed, j);
        const TaskSet ts = workload::make_taskset(gen);
        for (std::size_t t = 0; t < defs.size(); ++t) {
          if (run_def(*defs[t], ts, cfg.processors) == Outcome::schedulable)
            accepted[level_i * defs.size() + t].fetch_add(
                1, std::memory_order_relaxed);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };

  const int n_threads = std::max(1, cfg.threads);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  AcceptanceCurve curve;
  for (std::size_t level_i = 0; level_i < levels.size(); ++level_i) {
    std::vector<CurveRow> rows;
    for (std::size_t t = 0; t < defs.size(); ++t)
      rows.push_back({levels[level_i], defs[t]->name,
                      accepted[level_i * defs.size() + t].load(),
                      cfg.sets_per_level});
    std::sort(rows.begin(), rows.end(),
              [](const CurveRow& a, const CurveRow& b) {
                return a.test < b.test;
              });
    curve.rows.insert(curve.rows.end(), rows.begin(), rows.end());
  }
  return curve;
}

std::string emit_csv(const AcceptanceCurve& curve) {
  std::string out = "util,test,accepted,total,ratio\n";
  char buf[160];
  for (const CurveRow& row : curve.rows) {
    std::snprintf(buf, sizeof buf, "%.6f,%s,%d,%d,%.6f\n", row.util,
                  row.test.c_str(), row.accepted, row.total, row.ratio());
    out += buf;
  }
  return out;
}

AcceptanceCurve parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "util,test,accepted,total,ratio")
    throw std::runtime_error("parse_csv: bad header");
  AcceptanceCurve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CurveRow row;
    char test[64] = {0};
    double ratio = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%63[^,],%d,%d,%lf", &row.util, test,
                    &row.accepted, &row.total, &ratio) != 5)
      throw std::runtime_error("parse_csv: bad row: " + line);
    row.test = test;
    curve.rows.push_back(row);
  }
  return curve;
}

std::vector<Figure1Row> figure1_scan(double u1,
                                     const std::vector<double>& ratio_grid) {
  if (!(u1 > 0.0 && u1 < 1.0))
    throw std::invalid_argument("figure1_scan: u1 must be in (0, 1)");
  std::vector<Figure1Row> rows;
  rows.reserve(ratio_grid.size());
  for (double r : ratio_grid) {
    if (!(r > 0.0 && r < 1.0))
      throw std::invalid_argument("figure1_scan: period ratio out of (0, 1)");
    Figure1Row row;
    row.ratio = r;
    const double steps = std::ceil(1.0 / r) - 1.0;  // full releases before t2
    row.t1 = steps * r;
    row.c1 = u1 * r;
    const double beta = 1.0 / steps;
    row.u2_hyperbolic =
        (1.0 / beta + 1.0) / (beta * u1 + 1.0) - 1.0 / beta;
    row.u2_quadratic_util =
        k2q::uniform_quadratic_rhs({{1.0, beta, u1, 0.0, 0}}, 1.0, beta);
    row.u2_quadratic_general =
        k2q::quadratic_rhs({{1.0, 1.0, u1, row.c1, 0}}, 1.0);
    rows.push_back(row);
  }
  return rows;
}

std::string emit_figure1_csv(const std::vector<Figure1Row>& rows) {
  std::string out = "ratio,t1,c1,k2u_hyperbolic,k2q_uniform,k2q_general\n";
  char buf[200];
  for (const Figure1Row& row : rows) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  row.ratio, row.t1, row.c1, row.u2_hyperbolic,
                  row.u2_quadratic_util, row.u2_quadratic_general);
    out += buf;
  }
  return out;
}

}  // namespace ksched::experiment
