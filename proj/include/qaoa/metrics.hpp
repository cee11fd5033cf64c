#pragma once

#include <vector>

#include "qaoa/cspp.hpp"
#include "qaoa/ddqaoa.hpp"
#include "qaoa/qubo.hpp"

namespace qaoa {

struct ApproximationRatio {
  double raw = 0.0;         // expectation / e_min; NaN when e_min == 0
  double normalized = 0.0;  // (e_max - expectation) / (e_max - e_min), in [0,1]
};

/// Throws when the expectation lies outside [e_min, e_max] beyond 1e-9 slack.
/// Degenerate spectra (e_max == e_min) normalize to 1.
ApproximationRatio approximation_ratio(double expectation, double e_min,
                                       double e_max);

/// 2 CNOTs per ZZ coupling per cost layer (standard ZZ-phase decomposition).
long long cnot_count_per_layer(const IsingHamiltonian& ising);

/// Sum over trace steps of per-layer count times the depth at that step.
long long cumulative_cnots(const RunRecord& record,
                           const IsingHamiltonian& ising);

struct MetricSet {
  double raw_ratio = 0.0;
  double norm_ratio = 0.0;
  double success_prob = 0.0;
  long long cnots_per_layer = 0;
  long long cumulative_cnots = 0;
  int final_depth = 0;
};

/// Recomputes the final state from the record's best parameters and fills the
/// full metric set.
MetricSet evaluate_run(const CsppInstance& instance,
                       const IsingHamiltonian& ising,
                       const DiagonalSpectrum& diag, const RunRecord& record);

struct TrendStats {
  int considered = 0;        // records with depth >= 2
  int skipped = 0;           // records with depth < 2
  double frac_gamma_positive = 0.0;  // positive least-squares gamma slope
  double frac_beta_negative = 0.0;   // negative least-squares beta slope
  double frac_both = 0.0;            // both at once
  // Sign-insensitive adiabatic signature: |gamma| ramps up while beta ramps
  // down in magnitude. With the e^{-i beta X} mixer convention the optimizer
  // settles on the gamma < 0 branch, so the signed slopes alone miss it.
  double frac_gamma_magnitude_up = 0.0;
  double frac_adiabatic = 0.0;  // |gamma| up and |beta| down
};

/// Least-squares slope of the best parameters against their index.
double index_slope(const std::vector<double>& values);

TrendStats parameter_trend_stats(const std::vector<RunRecord>& records);

}  // namespace qaoa
