#include "qaoa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qaoa/statevector.hpp"

namespace qaoa {

ApproximationRatio approximation_ratio(double expectation, double e_min,
                                       double e_max) {
  constexpr double kSlack = 1e-9;
  if (e_max < e_min) throw std::invalid_argument("e_max < e_min");
  if (expectation < e_min - kSlack || expectation > e_max + kSlack)
    throw std::invalid_argument("expectation outside [e_min, e_max]");

  ApproximationRatio r;
  r.raw = e_min != 0.0 ? expectation / e_min
                       : std::numeric_limits<double>::quiet_NaN();
  r.normalized = e_max == e_min
                     ? 1.0
                     : std::clamp((e_max - expectation) / (e_max - e_min),
                                  0.0, 1.0);
  return r;
}

long long cnot_count_per_layer(const IsingHamiltonian& ising) {
  return 2 * static_cast<long long>(ising.couplings.size());
}

long long cumulative_cnots(const RunRecord& record,
                           const IsingHamiltonian& ising) {
  if (record.trace.empty()) throw std::invalid_argument("empty run trace");
  const long long per_layer = cnot_count_per_layer(ising);
  long long total = 0;
  for (const StepRecord& s : record.trace) total += per_layer * s.depth;
  return total;
}

MetricSet evaluate_run(const CsppInstance& instance,
                       const IsingHamiltonian& ising,
                       const DiagonalSpectrum& diag, const RunRecord& record) {
  if (instance.num_edges() != ising.n || ising.n != diag.n)
    throw std::invalid_argument("instance/Hamiltonian/spectrum size mismatch");

  const Statevector state = prepare_qaoa_state(diag, record.best_params);
  const double energy = expectation(state, diag);
  const ApproximationRatio ratio =
      approximation_ratio(energy, diag.e_min, diag.e_max);

  MetricSet m;
  m.raw_ratio = ratio.raw;
  m.norm_ratio = ratio.normalized;
  m.success_prob = ground_state_probability(state, diag.ground_set);
  m.cnots_per_layer = cnot_count_per_layer(ising);
  m.cumulative_cnots = cumulative_cnots(record, ising);
  m.final_depth = record.final_depth;
  return m;
}

double index_slope(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("slope needs >= 2 values");
  const double x_mean = static_cast<double>(n - 1) / 2.0;
  double y_mean = 0.0;
  for (double y : values) y_mean += y;
  y_mean /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - x_mean;
    num += dx * (values[i] - y_mean);
    den += dx * dx;
  }
  return num / den;
}

TrendStats parameter_trend_stats(const std::vector<RunRecord>& records) {
  TrendStats st;
  int gamma_pos = 0, beta_neg = 0, both = 0, gamma_mag = 0, adiabatic = 0;
  for (const RunRecord& r : records) {
    if (r.best_params.depth() < 2) {
      ++st.skipped;
      continue;
    }
    ++st.considered;
    const bool g = index_slope(r.best_params.gammas) > 0.0;
    const bool b = index_slope(r.best_params.betas) < 0.0;
    gamma_pos += g;
    beta_neg += b;
    both += g && b;

    std::vector<double> abs_g(r.best_params.gammas.size());
    std::vector<double> abs_b(r.best_params.betas.size());
    for (std::size_t i = 0; i < abs_g.size(); ++i) {
      abs_g[i] = std::abs(r.best_params.gammas[i]);
      abs_b[i] = std::abs(r.best_params.betas[i]);
    }
    const bool gm = index_slope(abs_g) > 0.0;
    gamma_mag += gm;
    adiabatic += gm && index_slope(abs_b) < 0.0;
  }
  if (st.considered > 0) {
    const double n = static_cast<double>(st.considered);
    st.frac_gamma_positive = static_cast<double>(gamma_pos) / n;
    st.frac_beta_negative = static_cast<double>(beta_neg) / n;
    st.frac_both = static_cast<double>(both) / n;
    st.frac_gamma_magnitude_up = static_cast<double>(gamma_mag) / n;
    st.frac_adiabatic = static_cast<double>(adiabatic) / n;
  }
  return st;
}

}  // namespace qaoa
