// Command-line harness: generate synthetic task sets, run schedulability
// tests on stored sets, sweep acceptance ratios over utilization levels
// and emit the two-task comparison scan. All output is line JSON or CSV.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ksched/experiment.hpp"
#include "ksched/io.hpp"
#include "ksched/task.hpp"
#include "ksched/workload.hpp"

namespace {

using namespace ksched;

DeadlineModel parse_model(const std::string& name) {
  DeadlineModel model;
  if (!deadline_model_from_string(name, model))
    throw CLI::ValidationError("model", "must be implicit, constrained or arbitrary");
  return model;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::vector<TaskSet> read_input(const std::string& path) {
  if (path.empty() || path == "-") return io::read_tasksets(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return io::read_tasksets(in);
}

int run_gen(const workload::GenConfig& gen, int count, const std::string& out) {
  std::ostringstream text;
  for (int i = 0; i < count; ++i) {
    workload::GenConfig cfg = gen;
    cfg.seed = workload::stream_seed(gen.seed, std::uint64_t(i));
    text << io::to_line(workload::make_taskset(cfg)) << '\n';
  }
  write_output(out, text.str());
  return 0;
}

int run_test(const std::string& in, const std::vector<std::string>& tests,
             int m, const std::string& out) {
  const std::vector<TaskSet> sets = read_input(in);
  std::ostringstream text;
  text << "set,test,verdict\n";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto verdicts = experiment::run_test_suite(sets[i], tests, m);
    for (const auto& [name, outcome] : verdicts)
      text << i << ',' << name << ',' << to_string(outcome) << '\n';
  }
  write_output(out, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k2U/k2Q schedulability test harness"};
  app.require_subcommand(1);

  // Shared generator options.
  workload::GenConfig gen;
  std::string model_name = "implicit";
  std::string out_path;

  auto add_gen_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", gen.n, "tasks per set")->default_val(10);
    cmd->add_option("--p", gen.period_magnitude,
                    "orders of magnitude spanned by periods")
        ->default_val(1);
    cmd->add_option("--model", model_name,
                    "deadline model: implicit|constrained|arbitrary")
        ->default_val("implicit");
    cmd->add_option("--seed", gen.seed, "base RNG seed")->default_val(1);
  };

  // gen
  auto* cmd_gen = app.add_subcommand("gen", "generate task sets (line JSON)");
  int gen_count = 1;
  add_gen_flags(cmd_gen);
  cmd_gen->add_option("--util", gen.target_util, "target total utilization")
      ->required();
  cmd_gen->add_option("--count", gen_count, "number of task sets")
      ->default_val(1);
  cmd_gen->add_option("--out", out_path, "output file (default stdout)");

  // test
  auto* cmd_test = app.add_subcommand("test", "run tests on stored task sets");
  std::string in_path;
  std::vector<std::string> test_names;
  int processors = 1;
  cmd_test->add_option("--in", in_path, "input file (default stdin)");
  cmd_test->add_option("--tests", test_names, "test names (comma separated)")
      ->required()
      ->delimiter(',');
  cmd_test->add_option("--m", processors, "processor count")->default_val(1);
  cmd_test->add_option("--out", out_path, "output file (default stdout)");

  // sweep
  auto* cmd_sweep =
      app.add_subcommand("sweep", "acceptance-ratio sweep (CSV output)");
  experiment::SweepConfig sweep;
  add_gen_flags(cmd_sweep);
  cmd_sweep->add_option("--from", sweep.util_from, "first utilization level")
      ->default_val(0.05);
  cmd_sweep->add_option("--to", sweep.util_to, "last utilization level")
      ->default_val(1.0);
  cmd_sweep->add_option("--step", sweep.util_step, "level step")
      ->default_val(0.01);
  cmd_sweep->add_option("--sets", sweep.sets_per_level, "task sets per level")
      ->default_val(100);
  cmd_sweep->add_option("--tests", test_names, "test names (comma separated)")
      ->required()
      ->delimiter(',');
  cmd_sweep->add_option("--m", sweep.processors, "processor count")
      ->default_val(1);
  cmd_sweep
      ->add_option("--threads", sweep.threads,
                   "worker threads (0 = hardware concurrency)")
      ->default_val(0);
  cmd_sweep->add_option("--out", out_path, "output file (default stdout)");

  // fig1
  auto* cmd_fig1 =
      app.add_subcommand("fig1", "two-task comparison scan (CSV output)");
  double u1 = 0.3;
  double fig_from = 0.01, fig_to = 0.99, fig_step = 0.01;
  cmd_fig1->add_option("--u1", u1, "utilization of the higher-priority task")
      ->default_val(0.3);
  cmd_fig1->add_option("--from", fig_from, "first period ratio")
      ->default_val(0.01);
  cmd_fig1->add_option("--to", fig_to, "last period ratio")->default_val(0.99);
  cmd_fig1->add_option("--step", fig_step, "ratio step")->default_val(0.01);
  cmd_fig1->add_option("--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    gen.deadline_model = parse_model(model_name);
    if (cmd_gen->parsed()) return run_gen(gen, gen_count, out_path);
    if (cmd_test->parsed())
      return run_test(in_path, test_names, processors, out_path);
    if (cmd_sweep->parsed()) {
      // Multiprocessor convention: n defaults to 5 tasks per processor
      // when not set explicitly.
      if (sweep.processors > 1 && cmd_sweep->count("--n") == 0)
        gen.n = 5 * sweep.processors;
      sweep.gen = gen;
      sweep.tests = test_names;
      if (sweep.threads <= 0)
        sweep.threads = int(std::thread::hardware_concurrency());
      if (sweep.threads <= 0) sweep.threads = 1;
      write_output(out_path, experiment::emit_csv(experiment::run_sweep(sweep)));
      return 0;
    }
    if (cmd_fig1->parsed()) {
      std::vector<double> grid;
      for (double r = fig_from; r <= fig_to + fig_step / 2; r += fig_step)
        grid.push_back(r);
      write_output(out_path,
                   experiment::emit_figure1_csv(experiment::figure1_scan(u1, grid)));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
