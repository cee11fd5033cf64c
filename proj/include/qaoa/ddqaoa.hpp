#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qaoa/interpolation.hpp"
#include "qaoa/qubo.hpp"
#include "qaoa/statevector.hpp"

namespace qaoa {

struct DdqaoaConfig {
  int p0 = 1;             // initial depth
  int p_max = 10;         // depth ceiling
  double epsilon = 1e-4;  // energy improvement threshold
  double sigma = 1e-6;    // variance threshold for the plateau check
  int patience_k = 20;    // consecutive non-improving steps tolerated
  int n_opt_max = 1200;   // total optimization step budget
  double init_gamma = 0.1;
  double init_beta = 0.1;

  // Cost angles are optimized in units of the spectral width: the working
  // coordinate is gamma * (e_max - e_min) / gamma_units. Penalty-compiled
  // Hamiltonians put the cost landscape at scale 1/width while the mixer
  // landscape stays O(1); without this change of variables a single Adam
  // learning rate cannot serve both. 0 disables (raw radians). Reported
  // parameters are always in raw radians.
  double gamma_units = 10.0;

  void validate() const;
};

enum class ConvergedReason {
  BudgetExhausted,  // ran through n_opt_max steps
  PmaxPlateau,      // plateau detected while already at p_max
};

struct StepRecord {
  int step = 0;   // 1-based
  int depth = 0;  // depth at which this energy was evaluated
  double energy = 0.0;
  long long cnots_this_step = 0;  // cnots_per_layer * depth
  double success_prob = 0.0;      // ground-set mass of the evaluated state
};

struct RunRecord {
  std::vector<StepRecord> trace;
  double best_energy = 0.0;
  ParameterSchedule best_params;
  int final_depth = 0;
  std::vector<int> depth_change_steps;  // steps after which depth grew
  ConvergedReason converged_reason = ConvergedReason::BudgetExhausted;
};

/// Plateau test: true when c >= patience_k, or the history holds at least two
/// entries and the population variance of its last max(2, floor(k/2)) entries
/// is below sigma.
bool check_convergence(std::span<const double> history, int c,
                       const DdqaoaConfig& config);

/// Depth p -> p+1 parameter transfer. p = 1 scales: gamma' = [g, 1.2 g],
/// beta' = [b, 0.8 b]. p >= 2 resamples on the uniform grid, cubic for
/// p >= 4 and linear otherwise; endpoints are kept exactly.
ParameterSchedule transfer_parameters(const ParameterSchedule& params);

/// Adaptive-depth run: per step one Adam update and one energy evaluation;
/// on plateau the depth grows by one (parameters transferred, optimizer
/// re-initialized) until p_max, where a further plateau ends the run. Returns
/// the tracked best parameters/energy. Fully deterministic per (diag, config,
/// seed); cnots_per_layer only feeds the per-step CNOT bookkeeping.
RunRecord run_ddqaoa(const DiagonalSpectrum& diag, const DdqaoaConfig& config,
                     std::uint64_t seed, long long cnots_per_layer = 0);

/// Fixed-depth baseline: same Adam loop at constant depth p for the full
/// budget, no convergence checks. Initial angles ramp linearly,
/// gamma_l = init_gamma * l / p and beta_l = init_beta * (1 - l / p).
RunRecord run_fixed_depth(const DiagonalSpectrum& diag, int p,
                          const DdqaoaConfig& config, std::uint64_t seed,
                          long long cnots_per_layer = 0);

}  // namespace qaoa
