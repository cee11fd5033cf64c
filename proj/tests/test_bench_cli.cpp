#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qaoa/bench.hpp"
#include "qaoa/instance_io.hpp"

using namespace qaoa;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BenchConfig small_config() {
  BenchConfig cfg;
  cfg.base_seed = 1234;
  cfg.num_instances = 3;
  cfg.num_edges = 6;
  cfg.methods = parse_methods("ddqaoa,p3");
  cfg.ddqaoa.n_opt_max = 60;
  cfg.workers = 1;
  return cfg;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(QAOA_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE("bench_cli") {

TEST_CASE("method list parsing") {
  const auto methods = parse_methods("ddqaoa,p3,p15");
  REQUIRE(methods.size() == 3);
  CHECK(methods[0].dynamic);
  CHECK(methods[0].label() == "ddqaoa");
  CHECK(methods[1] == MethodSpec{false, 3});
  CHECK(methods[2].label() == "p15");

  CHECK_THROWS_AS(parse_methods(""), ConfigError);
  CHECK_THROWS_AS(parse_methods("qaoa"), ConfigError);
  CHECK_THROWS_AS(parse_methods("p0"), ConfigError);
  CHECK_THROWS_AS(parse_methods("pxyz"), ConfigError);
}

TEST_CASE("config validation") {
  BenchConfig cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.num_edges = 30;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.workers = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.methods.clear();
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("penalty screening accepts only decode-exact instances") {
  int sound = 0;
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    const CompiledInstance ci =
        compile_instance(generate_instance(seed, 6));
    if (penalty_sound(ci)) ++sound;
    // Screen definition check: sound instances have all ground states
    // decoding to the optimal cost with no violations.
    if (penalty_sound(ci)) {
      for (std::uint64_t g : ci.spectrum.ground_set) {
        std::vector<std::uint8_t> bits(6, 0);
        for (std::size_t i = 0; i < 6; ++i) bits[i] = (g >> i) & 1;
        const auto dec = decode_bitstring(ci.instance, bits);
        CHECK(dec.violations.empty());
      }
    }
  }
  CHECK(sound >= 1);  // the screen keeps some of a typical seed range
}

TEST_CASE("run_benchmark cardinality, ordering and aggregates") {
  const BenchConfig cfg = small_config();
  const BenchReport report = run_benchmark(cfg);
  CHECK(report.instance_seeds.size() == 3);
  CHECK(report.rows.size() == 6);  // 3 instances x 2 methods
  REQUIRE(report.aggregates.size() == 2);
  CHECK(report.aggregates[0].method == "ddqaoa");
  CHECK(report.aggregates[1].method == "p3");
  CHECK(report.aggregates[0].count == 3);

  // Rows come in (instance, method) order.
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    CHECK(report.rows[i].instance_seed ==
          report.instance_seeds[i / 2]);
    CHECK(report.rows[i].method.label() == (i % 2 ? "p3" : "ddqaoa"));
  }

  // Aggregates recompute from rows.
  double mean_ratio = 0.0;
  for (const RunResult& r : report.rows)
    if (r.method.dynamic) mean_ratio += r.metrics.norm_ratio;
  mean_ratio /= 3.0;
  CHECK(report.aggregates[0].mean_ratio ==
        doctest::Approx(mean_ratio).epsilon(1e-12));

  // Metrics stay in range and CNOT columns behave.
  for (const RunResult& r : report.rows) {
    CHECK(r.metrics.norm_ratio >= 0.0);
    CHECK(r.metrics.norm_ratio <= 1.0);
    CHECK(r.metrics.success_prob >= 0.0);
    CHECK(r.metrics.success_prob <= 1.0);
    long long prev = 0;
    for (const StepRecord& s : r.record.trace) {
      if (r.method.dynamic) {
        CHECK(s.cnots_this_step >= prev);
        prev = s.cnots_this_step;
      } else {
        CHECK(s.cnots_this_step ==
              r.metrics.cnots_per_layer * r.method.p);
      }
    }
  }
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  BenchConfig cfg = small_config();
  const fs::path dir1 = fresh_dir("qaoa_bench_a");
  const fs::path dir2 = fresh_dir("qaoa_bench_b");
  emit_report(run_benchmark(cfg), dir1);
  cfg.workers = 2;
  emit_report(run_benchmark(cfg), dir2);

  for (const auto& entry : fs::directory_iterator(dir1)) {
    const auto name = entry.path().filename();
    if (name.extension() != ".csv") continue;  // manifest echoes workers
    CAPTURE(name.string());
    CHECK(slurp(entry.path()) == slurp(dir2 / name));
  }
  CHECK(fs::exists(dir1 / "rows.csv"));
  CHECK(fs::exists(dir1 / "summary.csv"));
  CHECK(fs::exists(dir1 / "manifest.json"));

  // Loading validates that aggregates recompute from rows.
  const LoadedReport loaded = load_report(dir1);
  CHECK(loaded.summary_lines.size() == 2);
  CHECK(!format_summary_table(loaded).empty());

  // A tampered summary is rejected on load.
  std::string summary = slurp(dir1 / "summary.csv");
  const auto pos = summary.find("0.");
  REQUIRE(pos != std::string::npos);
  summary[pos + 2] = summary[pos + 2] == '9' ? '1' : '9';
  std::ofstream(dir1 / "summary.csv", std::ios::binary) << summary;
  CHECK_THROWS_AS(load_report(dir1), std::runtime_error);
}

TEST_CASE("empty report emits headers only") {
  BenchReport empty;
  empty.config = small_config();
  const fs::path dir = fresh_dir("qaoa_bench_empty");
  emit_report(empty, dir);
  CHECK(slurp(dir / "rows.csv") ==
        "seed,method,qubits,raw_ratio,norm_ratio,success_prob,"
        "cnots_per_layer,cumulative_cnots,final_depth\n");
  CHECK(slurp(dir / "summary.csv") ==
        "method,qubits,mean_ratio,std_ratio,median_ratio,mean_succ,std_succ,"
        "median_succ,mean_cumulative_cnots\n");
  CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("cli: generate, solve-exact, run, report round trip") {
  const fs::path dir = fresh_dir("qaoa_cli_smoke");
  const fs::path log = dir / "log.txt";

  CHECK(run_cli("generate --seed 7 --edges 6 --count 2 --out " +
                    (dir / "instances").string(),
                log) == 0);
  const fs::path inst = dir / "instances" / "instance_7.json";
  REQUIRE(fs::exists(inst));
  CHECK(fs::exists(dir / "instances" / "instance_8.json"));
  CHECK_NOTHROW(load_instance(inst));

  CHECK(run_cli("solve-exact --instance " + inst.string(), log) == 0);
  CHECK(slurp(log).find("cost") != std::string::npos);

  CHECK(run_cli("run --instance " + inst.string() +
                    " --method fixed --p 2 --steps 40 --out " +
                    (dir / "run_out").string(),
                log) == 0);
  CHECK(fs::exists(dir / "run_out" / "trace_7_p2.csv"));

  CHECK(run_cli("bench --seed 900 --edges 5 --count 2 --methods ddqaoa,p2 "
                "--steps 30 --out " +
                    (dir / "bench_out").string(),
                log) == 0);
  CHECK(run_cli("report --in " + (dir / "bench_out").string(), log) == 0);
  CHECK(slurp(log).find("ddqaoa") != std::string::npos);
}

TEST_CASE("cli: error paths use exit codes 1 and 2") {
  const fs::path dir = fresh_dir("qaoa_cli_errors");
  const fs::path log = dir / "log.txt";
  // Unknown flag: config error.
  CHECK(run_cli("bench --nonsense 1", log) == 1);
  // Bad method list: config error.
  CHECK(run_cli("bench --methods foo --count 1 --out " + dir.string(), log) ==
        1);
  // Fixed method without a depth: config error.
  CHECK(run_cli("run --instance missing.json --method fixed --p 0", log) ==
        1);
  // Missing input file: runtime error.
  CHECK(run_cli("solve-exact --instance " + (dir / "nope.json").string(),
                log) == 2);
  // Unreadable report directory: runtime error.
  CHECK(run_cli("report --in " + (dir / "empty").string(), log) == 2);
}

}  // TEST_SUITE
