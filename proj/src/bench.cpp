#include "qaoa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qaoa/instance_io.hpp"
#include "qaoa/kernels.hpp"
#include "qaoa/statevector.hpp"

namespace qaoa {

using nlohmann::json;

std::string MethodSpec::label() const {
  return dynamic ? "ddqaoa" : "p" + std::to_string(p);
}

std::vector<MethodSpec> parse_methods(const std::string& list) {
  std::vector<MethodSpec> methods;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "ddqaoa") {
      methods.push_back({true, 0});
    } else if (item.size() > 1 && item[0] == 'p') {
      int p = 0;
      try {
        p = std::stoi(item.substr(1));
      } catch (const std::exception&) {
        throw ConfigError("bad method '" + item + "'");
      }
      if (p < 1) throw ConfigError("fixed depth must be >= 1 in '" + item + "'");
      methods.push_back({false, p});
    } else {
      throw ConfigError("bad method '" + item +
                        "' (expected 'ddqaoa' or 'p<depth>')");
    }
  }
  if (methods.empty()) throw ConfigError("empty method list");
  return methods;
}

void BenchConfig::validate() const {
  if (num_instances < 1) throw ConfigError("need at least one instance");
  if (num_edges < 3 || num_edges > 24)
    throw ConfigError("edge count must lie in [3, 24]");
  if (methods.empty()) throw ConfigError("no methods configured");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (max_seed_attempts < 1) throw ConfigError("max_seed_attempts must be >= 1");
  try {
    ddqaoa.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

CompiledInstance compile_instance(const CsppInstance& instance) {
  auto optimum = solve_exact(instance);
  if (!optimum) throw std::runtime_error("instance has no feasible path");
  const Penalties pen = default_penalties(instance);
  QuboModel qubo = build_penalty_hamiltonian(instance, pen.rho, pen.lambda);
  IsingHamiltonian ising = qubo_to_ising(qubo);
  DiagonalSpectrum spectrum = diagonal_spectrum(ising);
  return {instance, std::move(*optimum), std::move(qubo), std::move(ising),
          std::move(spectrum)};
}

bool penalty_sound(const CompiledInstance& ci) {
  const std::size_t n = ci.instance.num_edges();
  for (std::uint64_t g : ci.spectrum.ground_set) {
    std::vector<std::uint8_t> bits(n, 0);
    for (std::size_t i = 0; i < n; ++i) bits[i] = (g >> i) & 1;
    const DecodedCandidate dec = decode_bitstring(ci.instance, bits);
    if (!dec.violations.empty()) return false;
    if (!dec.cost_if_valid ||
        std::abs(*dec.cost_if_valid - ci.optimum.path_cost) > 1e-9)
      return false;
  }
  return true;
}

namespace {

RunRecord run_method(const CompiledInstance& ci, const MethodSpec& method,
                     const BenchConfig& cfg, std::uint64_t seed) {
  const long long per_layer = cnot_count_per_layer(ci.ising);
  return method.dynamic
             ? run_ddqaoa(ci.spectrum, cfg.ddqaoa, seed, per_layer)
             : run_fixed_depth(ci.spectrum, method.p, cfg.ddqaoa, seed,
                               per_layer);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double population_std(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

std::string fmt6(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

BenchReport run_benchmark(const BenchConfig& config) {
  config.validate();

  BenchReport report;
  report.config = config;

  // Screened instance stream: consecutive candidate seeds starting at
  // base_seed; infeasible or penalty-unsound candidates are skipped and
  // counted, keeping the stream a pure function of the config.
  std::vector<CompiledInstance> instances;
  instances.reserve(static_cast<std::size_t>(config.num_instances));
  std::uint64_t candidate = config.base_seed;
  const std::uint64_t budget =
      static_cast<std::uint64_t>(config.max_seed_attempts) *
      static_cast<std::uint64_t>(config.num_instances);
  while (instances.size() < static_cast<std::size_t>(config.num_instances)) {
    if (candidate - config.base_seed >= budget)
      throw std::runtime_error("exhausted candidate seeds while screening");
    try {
      CompiledInstance ci =
          compile_instance(generate_instance(candidate, config.num_edges,
                                             config.gen));
      if (penalty_sound(ci)) {
        report.instance_seeds.push_back(candidate);
        instances.push_back(std::move(ci));
      } else {
        ++report.rejected_seeds;
      }
    } catch (const std::runtime_error&) {
      ++report.infeasible_seeds;
    }
    ++candidate;
  }

  // One job per (instance, method); results land in a fixed grid so the
  // report is identical for any worker count.
  const std::size_t n_methods = config.methods.size();
  const std::size_t n_jobs = instances.size() * n_methods;
  std::vector<std::optional<RunResult>> grid(n_jobs);
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= n_jobs) return;
      const std::size_t inst_idx = j / n_methods;
      const std::size_t method_idx = j % n_methods;
      const CompiledInstance& ci = instances[inst_idx];
      const MethodSpec& method = config.methods[method_idx];
      const std::uint64_t seed = report.instance_seeds[inst_idx];

      RunResult res;
      res.instance_seed = seed;
      res.method = method;
      res.e_min = ci.spectrum.e_min;
      res.e_max = ci.spectrum.e_max;
      res.record = run_method(ci, method, config, seed);
      res.metrics = evaluate_run(ci.instance, ci.ising, ci.spectrum, res.record);
      grid[j] = std::move(res);
    }
  };

  const int n_threads =
      std::max(1, std::min<int>(config.workers, static_cast<int>(n_jobs)));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  report.rows.reserve(n_jobs);
  for (auto& cell : grid) report.rows.push_back(std::move(*cell));

  for (const MethodSpec& method : config.methods) {
    std::vector<double> ratios, succs, cnots;
    std::vector<RunRecord> records;
    for (const RunResult& r : report.rows) {
      if (r.method != method) continue;
      ratios.push_back(r.metrics.norm_ratio);
      succs.push_back(r.metrics.success_prob);
      cnots.push_back(static_cast<double>(r.metrics.cumulative_cnots));
      records.push_back(r.record);
    }
    MethodAggregate agg;
    agg.method = method.label();
    agg.count = static_cast<int>(ratios.size());
    agg.mean_ratio = mean(ratios);
    agg.std_ratio = population_std(ratios);
    agg.median_ratio = median(ratios);
    agg.mean_succ = mean(succs);
    agg.std_succ = population_std(succs);
    agg.median_succ = median(succs);
    agg.mean_cumulative_cnots = mean(cnots);
    report.aggregates.push_back(std::move(agg));
    report.trend[method.label()] = parameter_trend_stats(records);
  }
  return report;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

json trend_to_json(const std::map<std::string, TrendStats>& trend) {
  json j = json::object();
  for (const auto& [label, st] : trend) {
    j[label] = {{"considered", st.considered},
                {"skipped", st.skipped},
                {"frac_gamma_positive", st.frac_gamma_positive},
                {"frac_beta_negative", st.frac_beta_negative},
                {"frac_both", st.frac_both},
                {"frac_gamma_magnitude_up", st.frac_gamma_magnitude_up},
                {"frac_adiabatic", st.frac_adiabatic}};
  }
  return j;
}

}  // namespace

void emit_report(const BenchReport& report,
                 const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  const BenchConfig& cfg = report.config;

  std::string rows =
      "seed,method,qubits,raw_ratio,norm_ratio,success_prob,cnots_per_layer,"
      "cumulative_cnots,final_depth\n";
  for (const RunResult& r : report.rows) {
    rows += std::to_string(r.instance_seed) + "," + r.method.label() + "," +
            std::to_string(cfg.num_edges) + "," + fmt6(r.metrics.raw_ratio) +
            "," + fmt6(r.metrics.norm_ratio) + "," +
            fmt6(r.metrics.success_prob) + "," +
            std::to_string(r.metrics.cnots_per_layer) + "," +
            std::to_string(r.metrics.cumulative_cnots) + "," +
            std::to_string(r.metrics.final_depth) + "\n";
  }
  write_file(directory / "rows.csv", rows);

  std::string summary =
      "method,qubits,mean_ratio,std_ratio,median_ratio,mean_succ,std_succ,"
      "median_succ,mean_cumulative_cnots\n";
  for (const MethodAggregate& a : report.aggregates) {
    summary += a.method + "," + std::to_string(cfg.num_edges) + "," +
               fmt6(a.mean_ratio) + "," + fmt6(a.std_ratio) + "," +
               fmt6(a.median_ratio) + "," + fmt6(a.mean_succ) + "," +
               fmt6(a.std_succ) + "," + fmt6(a.median_succ) + "," +
               fmt6(a.mean_cumulative_cnots) + "\n";
  }
  write_file(directory / "summary.csv", summary);

  for (const RunResult& r : report.rows) {
    std::string trace =
        "step,p,energy,norm_ratio,success_prob,cnots_step,cnots_cumulative\n";
    long long cumulative = 0;
    for (const StepRecord& s : r.record.trace) {
      cumulative += s.cnots_this_step;
      const double norm_ratio =
          approximation_ratio(s.energy, r.e_min, r.e_max).normalized;
      trace += std::to_string(s.step) + "," + std::to_string(s.depth) + "," +
               fmt6(s.energy) + "," + fmt6(norm_ratio) + "," +
               fmt6(s.success_prob) + "," + std::to_string(s.cnots_this_step) +
               "," + std::to_string(cumulative) + "\n";
    }
    write_file(directory / ("trace_" + std::to_string(r.instance_seed) + "_" +
                            r.method.label() + ".csv"),
               trace);
  }

  json methods = json::array();
  for (const MethodSpec& m : cfg.methods) methods.push_back(m.label());
  const json manifest = {
      {"base_seed", cfg.base_seed},
      {"num_instances", cfg.num_instances},
      {"num_edges", cfg.num_edges},
      {"methods", methods},
      {"steps", cfg.ddqaoa.n_opt_max},
      {"workers", cfg.workers},
      {"max_seed_attempts", cfg.max_seed_attempts},
      {"ddqaoa",
       {{"p0", cfg.ddqaoa.p0},
        {"p_max", cfg.ddqaoa.p_max},
        {"epsilon", cfg.ddqaoa.epsilon},
        {"sigma", cfg.ddqaoa.sigma},
        {"patience_k", cfg.ddqaoa.patience_k},
        {"init_gamma", cfg.ddqaoa.init_gamma},
        {"init_beta", cfg.ddqaoa.init_beta},
        {"gamma_units", cfg.ddqaoa.gamma_units}}},
      {"gen",
       {{"cost_min", cfg.gen.cost_min},
        {"cost_max", cfg.gen.cost_max},
        {"resource_min", cfg.gen.resource_min},
        {"resource_max", cfg.gen.resource_max},
        {"slack_factor", cfg.gen.slack_factor},
        {"max_retries", cfg.gen.max_retries}}},
      {"instance_seeds", report.instance_seeds},
      {"rejected_seeds", report.rejected_seeds},
      {"infeasible_seeds", report.infeasible_seeds},
      {"trend", trend_to_json(report.trend)},
      {"kernels", kernels::active_kernels().name}};
  write_file(directory / "manifest.json", manifest.dump(2) + "\n");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

LoadedReport load_report(const std::filesystem::path& directory) {
  const auto row_lines = read_lines(directory / "rows.csv");
  const auto summary_lines = read_lines(directory / "summary.csv");
  if (row_lines.empty() || summary_lines.empty())
    throw std::runtime_error("report files are missing headers");

  // Per-method metric columns in row order.
  struct Cols {
    std::vector<double> ratio, succ, cnots;
  };
  std::map<std::string, Cols> by_method;
  std::vector<std::string> method_order;
  for (std::size_t i = 1; i < row_lines.size(); ++i) {
    const auto f = split_csv_line(row_lines[i]);
    if (f.size() != 9)
      throw std::runtime_error("malformed rows.csv line " + std::to_string(i));
    if (!by_method.count(f[1])) method_order.push_back(f[1]);
    Cols& c = by_method[f[1]];
    c.ratio.push_back(std::stod(f[4]));
    c.succ.push_back(std::stod(f[5]));
    c.cnots.push_back(std::stod(f[7]));
  }

  // Aggregates must be recomputable from the rows (up to print rounding).
  constexpr double kTol = 2e-6;
  auto close = [](double a, double b) { return std::abs(a - b) <= kTol; };
  std::size_t checked = 0;
  for (std::size_t i = 1; i < summary_lines.size(); ++i) {
    const auto f = split_csv_line(summary_lines[i]);
    if (f.size() != 9)
      throw std::runtime_error("malformed summary.csv line " +
                               std::to_string(i));
    const auto it = by_method.find(f[0]);
    if (it == by_method.end())
      throw std::runtime_error("summary method '" + f[0] + "' has no rows");
    const Cols& c = it->second;
    const bool ok = close(std::stod(f[2]), mean(c.ratio)) &&
                    close(std::stod(f[3]), population_std(c.ratio)) &&
                    close(std::stod(f[4]), median(c.ratio)) &&
                    close(std::stod(f[5]), mean(c.succ)) &&
                    close(std::stod(f[6]), population_std(c.succ)) &&
                    close(std::stod(f[7]), median(c.succ)) &&
                    close(std::stod(f[8]), mean(c.cnots));
    if (!ok)
      throw std::runtime_error("summary row for '" + f[0] +
                               "' is not recomputable from rows.csv");
    ++checked;
  }
  if (checked != method_order.size())
    throw std::runtime_error("summary/rows method sets differ");

  LoadedReport loaded;
  loaded.summary_lines.assign(summary_lines.begin() + 1, summary_lines.end());

  std::ifstream mf(directory / "manifest.json", std::ios::binary);
  if (mf) {
    std::ostringstream ss;
    ss << mf.rdbuf();
    loaded.manifest_json = ss.str();
    const json manifest = json::parse(loaded.manifest_json);
    if (manifest.contains("trend")) {
      for (const auto& [label, t] : manifest.at("trend").items()) {
        TrendStats st;
        st.considered = t.value("considered", 0);
        st.skipped = t.value("skipped", 0);
        st.frac_gamma_positive = t.value("frac_gamma_positive", 0.0);
        st.frac_beta_negative = t.value("frac_beta_negative", 0.0);
        st.frac_both = t.value("frac_both", 0.0);
        st.frac_gamma_magnitude_up = t.value("frac_gamma_magnitude_up", 0.0);
        st.frac_adiabatic = t.value("frac_adiabatic", 0.0);
        loaded.trend[label] = st;
      }
    }
  }
  return loaded;
}

namespace {

std::string trend_line(const std::string& label, const TrendStats& t) {
  char buf[240];
  std::snprintf(buf, sizeof(buf),
                "%-8s gamma-slope>0: %5.1f%%  beta-slope<0: %5.1f%%  both: "
                "%5.1f%%  |gamma|-up&|beta|-down: %5.1f%%  (n=%d, skipped %d)",
                label.c_str(), 100.0 * t.frac_gamma_positive,
                100.0 * t.frac_beta_negative, 100.0 * t.frac_both,
                100.0 * t.frac_adiabatic, t.considered, t.skipped);
  return buf;
}

std::string table_header() {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-8s %6s %22s %12s %22s %12s %14s\n",
                "method", "qubits", "mean ratio (std)", "median",
                "mean succ (std)", "median", "mean cnots");
  return buf;
}

std::string table_line(const std::string& method, int qubits, double mr,
                       double sr, double medr, double ms, double ss,
                       double meds, double cnots) {
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "%-8s %6d %12.6f (%.6f) %12.6f %12.6f (%.6f) %12.6f %14.0f\n",
                method.c_str(), qubits, mr, sr, medr, ms, ss, meds, cnots);
  return buf;
}

}  // namespace

std::string format_summary_table(const BenchReport& report) {
  std::string out = table_header();
  for (const MethodAggregate& a : report.aggregates)
    out += table_line(a.method, report.config.num_edges, a.mean_ratio,
                      a.std_ratio, a.median_ratio, a.mean_succ, a.std_succ,
                      a.median_succ, a.mean_cumulative_cnots);
  out += "\nparameter trends (least-squares slope of best angles vs index):\n";
  for (const auto& [label, t] : report.trend) out += trend_line(label, t) + "\n";
  return out;
}

std::string format_summary_table(const LoadedReport& report) {
  std::string out = table_header();
  for (const std::string& line : report.summary_lines) {
    const auto f = split_csv_line(line);
    out += table_line(f[0], std::stoi(f[1]), std::stod(f[2]), std::stod(f[3]),
                      std::stod(f[4]), std::stod(f[5]), std::stod(f[6]),
                      std::stod(f[7]), std::stod(f[8]));
  }
  if (!report.trend.empty()) {
    out += "\nparameter trends (least-squares slope of best angles vs index):\n";
    for (const auto& [label, t] : report.trend)
      out += trend_line(label, t) + "\n";
  }
  return out;
}

}  // namespace qaoa
