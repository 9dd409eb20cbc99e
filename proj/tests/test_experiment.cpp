#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "ksched/experiment.hpp"
#include "ksched/uniproc.hpp"

using namespace ksched;
using namespace ksched::experiment;

namespace {

SweepConfig small_sweep() {
  SweepConfig cfg;
  cfg.util_from = 0.3;
  cfg.util_to = 1.0;
  cfg.util_step = 0.1;
  cfg.sets_per_level = 40;
  cfg.gen.n = 8;
  cfg.gen.period_magnitude = 1;
  cfg.gen.deadline_model = DeadlineModel::constrained;
  cfg.gen.seed = 77;
  cfg.tests = {"TDA", "HP", "HP-EP", "QB"};
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("named test dispatch") {
  TaskSet single;
  single.tasks = {Task{0, 1.0, 4.0, 4.0}};
  single.model = DeadlineModel::implicit;

  SUBCASE("single-task set passes everything applicable") {
    for (const std::string& name : registered_tests()) {
      if (!test_applicable(name, single.model, 1)) continue;
      CHECK(run_named_test(name, single, 1) == Outcome::schedulable);
    }
  }

  SUBCASE("unknown names throw") {
    CHECK_THROWS_AS(run_named_test("NOPE", single, 1), UnknownTestError);
  }

  SUBCASE("TDA on an arbitrary-deadline set is a model mismatch") {
    TaskSet arb = single;
    arb.tasks[0].deadline = 6.0;
    arb.model = DeadlineModel::arbitrary;
    CHECK_THROWS_AS(run_named_test("TDA", arb, 1), ModelMismatchError);
    CHECK_FALSE(test_applicable("TDA", DeadlineModel::arbitrary, 1));
  }

  SUBCASE("uniprocessor tests reject m > 1") {
    CHECK_THROWS_AS(run_named_test("HP", single, 4), ModelMismatchError);
  }

  SUBCASE("multiprocessor tests need implicit deadlines") {
    CHECK(test_applicable("QB-BC", DeadlineModel::implicit, 4));
    CHECK_FALSE(test_applicable("QB-BC", DeadlineModel::constrained, 4));
  }

  SUBCASE("HP on an arbitrary set routes to the busy-window variant") {
    const TaskSet arb =
        testutil::random_taskset(5, 6, 0.6, DeadlineModel::arbitrary);
    const Outcome via_registry = run_named_test("HP", arb, 1);
    bool all = true;
    for (std::size_t k = 0; k < arb.size(); ++k)
      all = all &&
            uniproc::hp_test(arb, k, uniproc::VirtualMode::arbitrary).ok();
    CHECK((via_registry == Outcome::schedulable) == all);
    CHECK(run_named_test("HP-Busy", arb, 1) == via_registry);
  }

  SUBCASE("set-level verdict needs every task to pass") {
    TaskSet two;
    two.tasks = {Task{0, 1.0, 2.0, 2.0}, Task{1, 2.9, 3.0, 3.0}};
    two.model = DeadlineModel::implicit;
    CHECK(run_named_test("TDA", two, 1) == Outcome::not_proven);
  }

  SUBCASE("quadratic acceptance implies exact acceptance per suite") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      const TaskSet ts = testutil::random_taskset(
          seed, 8, 0.4 + 0.55 * (seed % 9) / 9.0, DeadlineModel::constrained);
      const auto verdicts = run_test_suite(ts, {"TDA", "QB"}, 1);
      if (verdicts.at("QB") == Outcome::schedulable)
        CHECK(verdicts.at("TDA") == Outcome::schedulable);
    }
  }
}

TEST_CASE("sweep") {
  SUBCASE("counts every level and test without gaps") {
    const SweepConfig cfg = small_sweep();
    const AcceptanceCurve curve = run_sweep(cfg);
    CHECK(curve.rows.size() == sweep_levels(cfg).size() * cfg.tests.size());
    for (const CurveRow& row : curve.rows) CHECK(row.total == 40);
  }

  SUBCASE("reproducible across worker counts") {
    SweepConfig cfg = small_sweep();
    const std::string one = emit_csv(run_sweep(cfg));
    cfg.threads = 4;
    const std::string four = emit_csv(run_sweep(cfg));
    CHECK(one == four);
    cfg.threads = 1;
    CHECK(emit_csv(run_sweep(cfg)) == one);
  }

  SUBCASE("exact oracle ratios trend downward in utilization") {
    const AcceptanceCurve curve = run_sweep(small_sweep());
    const std::vector<double> ratios = curve.ratios_for("TDA");
    std::vector<double> levels;
    for (std::size_t i = 0; i < ratios.size(); ++i)
      levels.push_back(double(i));
    CHECK(testutil::spearman(levels, ratios) < 0.0);
  }

  SUBCASE("normalized overload levels accept nothing") {
    SweepConfig cfg = small_sweep();
    cfg.util_from = cfg.util_to = 1.1;
    cfg.gen.n = 8;
    const AcceptanceCurve curve = run_sweep(cfg);
    for (const CurveRow& row : curve.rows) CHECK(row.accepted == 0);
  }
}

TEST_CASE("csv") {
  SUBCASE("empty curve emits only the header") {
    CHECK(emit_csv({}) == "util,test,accepted,total,ratio\n");
  }

  SUBCASE("row format") {
    AcceptanceCurve curve;
    curve.rows.push_back({0.5, "QB", 87, 100});
    CHECK(emit_csv(curve) ==
          "util,test,accepted,total,ratio\n0.500000,QB,87,100,0.870000\n");
  }

  SUBCASE("parse inverts emit") {
    const AcceptanceCurve curve = run_sweep(small_sweep());
    const std::string text = emit_csv(curve);
    const AcceptanceCurve back = parse_csv(text);
    CHECK(emit_csv(back) == text);
  }
}

TEST_CASE("two-task comparison scan") {
  std::vector<double> grid;
  for (double r = 0.05; r < 0.991; r += 0.01) grid.push_back(r);
  const auto rows = figure1_scan(0.3, grid);
  REQUIRE(rows.size() == grid.size());

  SUBCASE("the 0.7 ratio row reproduces the worked construction") {
    const auto it = std::find_if(rows.begin(), rows.end(), [](const auto& r) {
      return std::abs(r.ratio - 0.7) < 1e-9;
    });
    REQUIRE(it != rows.end());
    CHECK(it->t1 == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(it->c1 == doctest::Approx(0.21).epsilon(1e-12));
  }

  SUBCASE("utilization-only bounds: hyperbolic dominates quadratic") {
    for (const auto& row : rows)
      CHECK(row.u2_hyperbolic >= row.u2_quadratic_util - 1e-12);
  }

  SUBCASE("general quadratic and hyperbolic cross in both directions") {
    bool quad_wins = false, hyper_wins = false;
    for (const auto& row : rows) {
      if (row.u2_quadratic_general > row.u2_hyperbolic + 1e-9) quad_wins = true;
      if (row.u2_hyperbolic > row.u2_quadratic_general + 1e-9) hyper_wins = true;
    }
    CHECK(quad_wins);
    CHECK(hyper_wins);
  }

  SUBCASE("csv shape") {
    const std::string text = emit_figure1_csv(rows);
    CHECK(text.substr(0, text.find('\n')) ==
          "ratio,t1,c1,k2u_hyperbolic,k2q_uniform,k2q_general");
  }
}
