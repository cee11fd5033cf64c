#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaoa/cspp.hpp"
#include "qaoa/ddqaoa.hpp"
#include "qaoa/metrics.hpp"
#include "qaoa/qubo.hpp"

namespace qaoa {

/// User-input errors (bad flags, malformed files). The CLI maps these to
/// exit code 1 and everything else to 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MethodSpec {
  bool dynamic = false;  // adaptive-depth run
  int p = 0;             // fixed depth when !dynamic

  std::string label() const;
  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

/// Parses "ddqaoa,p3,p5,p10,p15"-style lists. Throws ConfigError.
std::vector<MethodSpec> parse_methods(const std::string& list);

struct BenchConfig {
  std::uint64_t base_seed = 42;
  int num_instances = 20;
  int num_edges = 10;
  std::vector<MethodSpec> methods;
  DdqaoaConfig ddqaoa;  // n_opt_max is the shared step budget
  GenConfig gen;
  int workers = 1;
  int max_seed_attempts = 10000;  // candidate-seed budget per accepted instance

  void validate() const;
};

/// One instance with its compiled artifacts and exact solution.
struct CompiledInstance {
  CsppInstance instance;
  PathSolution optimum;
  QuboModel qubo;
  IsingHamiltonian ising;
  DiagonalSpectrum spectrum;
};

CompiledInstance compile_instance(const CsppInstance& instance);

/// True when every ground state of the compiled Hamiltonian decodes to a
/// zero-violation selection whose cost equals the exact optimum. The squared
/// resource penalty can break this for some instances; the benchmark stream
/// skips (and counts) those.
bool penalty_sound(const CompiledInstance& ci);

struct RunResult {
  std::uint64_t instance_seed = 0;
  MethodSpec method;
  double e_min = 0.0;
  double e_max = 0.0;
  RunRecord record;
  MetricSet metrics;
};

struct MethodAggregate {
  std::string method;
  int count = 0;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;  // population
  double median_ratio = 0.0;
  double mean_succ = 0.0;
  double std_succ = 0.0;
  double median_succ = 0.0;
  double mean_cumulative_cnots = 0.0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<std::uint64_t> instance_seeds;
  long long rejected_seeds = 0;    // penalty-unsound, skipped with count
  long long infeasible_seeds = 0;  // generation failures, skipped with count
  std::vector<RunResult> rows;     // ordered by (instance, method) position
  std::vector<MethodAggregate> aggregates;  // in method order
  std::map<std::string, TrendStats> trend;  // per method label
};

/// Generates the screened instance stream, runs every configured method on
/// every instance (instances fan out across `workers` threads; outputs are
/// independent of the worker count), and aggregates.
BenchReport run_benchmark(const BenchConfig& config);

/// Writes summary.csv, rows.csv, one trace_<seed>_<method>.csv per run and
/// manifest.json into `directory` (created if missing). Deterministic bytes:
/// fixed row order, all floats at 6 decimal places.
void emit_report(const BenchReport& report,
                 const std::filesystem::path& directory);

struct LoadedReport {
  std::vector<std::string> summary_lines;  // verbatim data lines
  std::map<std::string, TrendStats> trend;
  std::string manifest_json;
};

/// Reads a report directory and re-derives every aggregate from rows.csv,
/// failing when the stored summary disagrees (beyond print rounding).
LoadedReport load_report(const std::filesystem::path& directory);

std::string format_summary_table(const BenchReport& report);
std::string format_summary_table(const LoadedReport& report);

}  // namespace qaoa
