// Command-line front end: instance generation, exact solving, single QAOA
// runs and the full benchmark harness with CSV reports.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qaoa/bench.hpp"
#include "qaoa/instance_io.hpp"
#include "qaoa/metrics.hpp"
#include "qaoa/statevector.hpp"

namespace {

using namespace qaoa;

int cmd_generate(std::uint64_t seed, int edges, int count,
                 const std::string& out_dir, const GenConfig& gen) {
  std::filesystem::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const CsppInstance instance = generate_instance(s, edges, gen);
    const auto path = std::filesystem::path(out_dir) /
                      ("instance_" + std::to_string(s) + ".json");
    save_instance(instance, path);
    std::cout << path.string() << "\n";
  }
  return 0;
}

int cmd_solve_exact(const std::string& file) {
  const CsppInstance instance = load_instance(file);
  const auto solution = solve_exact(instance);
  if (!solution) {
    std::cout << "infeasible: no path satisfies the resource budget\n";
    return 0;
  }
  std::cout << "cost " << solution->path_cost << "\n";
  std::cout << "resource " << solution->path_resource << " (limit "
            << instance.resource_limit() << ")\n";
  std::cout << "path";
  for (int v : solution->vertices) std::cout << " " << v;
  std::cout << "\n";
  return 0;
}

int cmd_run(const std::string& file, const std::string& method_name, int p,
            int steps, const std::string& out_dir) {
  const MethodSpec method = method_name == "ddqaoa"
                                ? MethodSpec{true, 0}
                                : MethodSpec{false, p};
  if (!method.dynamic && p < 1)
    throw ConfigError("--method fixed requires --p >= 1");

  const CompiledInstance ci = compile_instance(load_instance(file));
  DdqaoaConfig cfg;
  cfg.n_opt_max = steps;
  const long long per_layer = cnot_count_per_layer(ci.ising);
  const RunRecord record =
      method.dynamic
          ? run_ddqaoa(ci.spectrum, cfg, ci.instance.seed(), per_layer)
          : run_fixed_depth(ci.spectrum, method.p, cfg, ci.instance.seed(),
                            per_layer);
  const MetricSet metrics =
      evaluate_run(ci.instance, ci.ising, ci.spectrum, record);

  // Reuse the report writer for the trace file.
  BenchReport report;
  report.config.base_seed = ci.instance.seed();
  report.config.num_instances = 1;
  report.config.num_edges = static_cast<int>(ci.instance.num_edges());
  report.config.methods = {method};
  report.config.ddqaoa = cfg;
  report.instance_seeds = {ci.instance.seed()};
  RunResult row{ci.instance.seed(), method, ci.spectrum.e_min,
                ci.spectrum.e_max, record, metrics};
  report.rows.push_back(std::move(row));
  MethodAggregate agg;
  agg.method = method.label();
  agg.count = 1;
  agg.mean_ratio = agg.median_ratio = metrics.norm_ratio;
  agg.mean_succ = agg.median_succ = metrics.success_prob;
  agg.mean_cumulative_cnots = static_cast<double>(metrics.cumulative_cnots);
  report.aggregates.push_back(agg);
  emit_report(report, out_dir);

  std::printf("method %s: energy %.6f, norm_ratio %.6f, success_prob %.6f\n",
              method.label().c_str(),
              expectation(prepare_qaoa_state(ci.spectrum, record.best_params),
                          ci.spectrum),
              metrics.norm_ratio, metrics.success_prob);
  std::printf("final depth %d, cnots/layer %lld, cumulative cnots %lld\n",
              metrics.final_depth, metrics.cnots_per_layer,
              metrics.cumulative_cnots);
  std::printf("report written to %s\n", out_dir.c_str());
  return 0;
}

int cmd_bench(const BenchConfig& cfg, const std::string& out_dir) {
  const BenchReport report = run_benchmark(cfg);
  emit_report(report, out_dir);
  std::cout << format_summary_table(report);
  std::cout << "\ninstances " << report.instance_seeds.size()
            << ", screened out " << report.rejected_seeds
            << " penalty-unsound and " << report.infeasible_seeds
            << " infeasible candidate seeds\n";
  std::cout << "report written to " << out_dir << "\n";
  return 0;
}

int cmd_report(const std::string& in_dir) {
  const LoadedReport loaded = load_report(in_dir);
  std::cout << format_summary_table(loaded);
  std::cout << "\naggregates verified against rows.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CSPP-to-Ising compiler and adaptive-depth QAOA benchmark"};
  app.require_subcommand(1);

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "write random instances");
  std::uint64_t g_seed = 42;
  int g_edges = 10, g_count = 1;
  std::string g_out = "instances";
  GenConfig g_cfg;
  gen_cmd->add_option("--seed", g_seed, "base seed (instance i uses seed+i)");
  gen_cmd->add_option("--edges", g_edges, "edges per instance (= qubits)");
  gen_cmd->add_option("--count", g_count, "number of instances");
  gen_cmd->add_option("--out", g_out, "output directory");
  gen_cmd->add_option("--slack", g_cfg.slack_factor, "resource budget slack");

  // solve-exact
  auto* solve_cmd = app.add_subcommand("solve-exact", "classical optimum");
  std::string s_file;
  solve_cmd->add_option("--instance", s_file, "instance file")->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "one QAOA run on one instance");
  std::string r_file, r_method = "ddqaoa", r_out = "run_out";
  int r_p = 0, r_steps = 1200;
  run_cmd->add_option("--instance", r_file, "instance file")->required();
  run_cmd->add_option("--method", r_method, "ddqaoa or fixed")
      ->check(CLI::IsMember({"ddqaoa", "fixed"}));
  run_cmd->add_option("--p", r_p, "depth for --method fixed");
  run_cmd->add_option("--steps", r_steps, "optimization steps");
  run_cmd->add_option("--out", r_out, "output directory");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "batch benchmark with report");
  BenchConfig b_cfg;
  std::string b_methods = "ddqaoa,p3,p5,p10,p15";
  std::string b_out = "bench_out";
  int b_steps = 1200;
  bench_cmd->add_option("--seed", b_cfg.base_seed, "base candidate seed");
  bench_cmd->add_option("--edges", b_cfg.num_edges, "edges (= qubits)");
  bench_cmd->add_option("--count", b_cfg.num_instances, "instances");
  bench_cmd->add_option("--methods", b_methods, "comma list: ddqaoa,p3,...");
  bench_cmd->add_option("--steps", b_steps, "optimization steps per run");
  bench_cmd->add_option("--p-max", b_cfg.ddqaoa.p_max, "adaptive depth cap");
  bench_cmd->add_option("--workers", b_cfg.workers, "worker threads");
  bench_cmd->add_option("--out", b_out, "output directory");

  // report
  auto* report_cmd = app.add_subcommand("report", "print a stored report");
  std::string rep_in;
  report_cmd->add_option("--in", rep_in, "report directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // config error
  }

  try {
    if (gen_cmd->parsed()) return cmd_generate(g_seed, g_edges, g_count, g_out, g_cfg);
    if (solve_cmd->parsed()) return cmd_solve_exact(s_file);
    if (run_cmd->parsed()) return cmd_run(r_file, r_method, r_p, r_steps, r_out);
    if (bench_cmd->parsed()) {
      b_cfg.methods = parse_methods(b_methods);
      b_cfg.ddqaoa.n_opt_max = b_steps;
      return cmd_bench(b_cfg, b_out);
    }
    if (report_cmd->parsed()) return cmd_report(rep_in);
  } catch (const qaoa::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
