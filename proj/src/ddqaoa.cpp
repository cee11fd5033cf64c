#include "qaoa/ddqaoa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qaoa/adam.hpp"

namespace qaoa {

void DdqaoaConfig::validate() const {
  if (p0 < 1 || p0 > p_max)
    throw std::invalid_argument("require 1 <= p0 <= p_max");
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
  if (patience_k < 2) throw std::invalid_argument("patience_k must be >= 2");
  if (n_opt_max < 1) throw std::invalid_argument("n_opt_max must be >= 1");
  if (gamma_units < 0.0)
    throw std::invalid_argument("gamma_units must be >= 0");
}

bool check_convergence(std::span<const double> history, int c,
                       const DdqaoaConfig& config) {
  if (history.empty())
    throw std::invalid_argument("convergence check needs history");
  if (c >= config.patience_k) return true;
  if (history.size() < 2) return false;

  const std::size_t window = std::max<std::size_t>(
      2, static_cast<std::size_t>(config.patience_k / 2));
  const std::size_t len = std::min(window, history.size());
  const auto tail = history.subspan(history.size() - len);

  double mean = 0.0;
  for (double e : tail) mean += e;
  mean /= static_cast<double>(len);
  double var = 0.0;
  for (double e : tail) var += (e - mean) * (e - mean);
  var /= static_cast<double>(len);
  return var < config.sigma;
}

ParameterSchedule transfer_parameters(const ParameterSchedule& params) {
  params.validate();
  const std::size_t p = params.depth();
  if (p == 1) {
    return {{params.gammas[0], 1.2 * params.gammas[0]},
            {params.betas[0], 0.8 * params.betas[0]}};
  }
  const InterpKind kind = p >= 4 ? InterpKind::Cubic : InterpKind::Linear;
  return {interpolate(params.gammas, p + 1, kind),
          interpolate(params.betas, p + 1, kind)};
}

namespace {

// Working coordinates for the optimizer: gamma entries are multiplied by
// `scale` so that the cost-angle landscape has the same feature size as the
// mixer's. scale = 1 is the identity (raw radians).
std::vector<double> flatten(const ParameterSchedule& s, double scale) {
  std::vector<double> flat;
  flat.reserve(2 * s.depth());
  for (double g : s.gammas) flat.push_back(g * scale);
  flat.insert(flat.end(), s.betas.begin(), s.betas.end());
  return flat;
}

ParameterSchedule unflatten(std::span<const double> flat, double scale) {
  const std::size_t p = flat.size() / 2;
  ParameterSchedule s;
  s.gammas.reserve(p);
  s.betas.assign(flat.begin() + static_cast<std::ptrdiff_t>(p), flat.end());
  for (std::size_t i = 0; i < p; ++i) s.gammas.push_back(flat[i] / scale);
  return s;
}

double gamma_coordinate_scale(const DiagonalSpectrum& diag,
                              const DdqaoaConfig& config) {
  if (config.gamma_units == 0.0) return 1.0;
  const double width = diag.e_max - diag.e_min;
  return width > 0.0 ? width / config.gamma_units : 1.0;
}

// Initial angles live in working coordinates; a raw gamma of
// init_gamma / scale starts the cost layers inside the coherent region of
// wide-spectrum Hamiltonians.
ParameterSchedule ramp_schedule(int p, double init_gamma, double init_beta,
                                double scale) {
  ParameterSchedule s;
  for (int l = 1; l <= p; ++l) {
    const double f = static_cast<double>(l) / static_cast<double>(p);
    s.gammas.push_back(init_gamma * f / scale);
    s.betas.push_back(init_beta * (1.0 - f));
  }
  return s;
}

struct LoopState {
  ParameterSchedule params;  // raw radians, the single source of truth
  AdamOptimizer adam;
  RunRecord record;
  std::vector<double> history;
  int counter = 0;  // consecutive non-improving steps
  double scale = 1.0;
};

// One Adam update followed by the post-update energy evaluation; appends to
// the trace and maintains the epsilon-filtered best. Returns the prepared
// state so the next step's gradient can reuse it.
Statevector optimization_step(LoopState& st, const DiagonalSpectrum& diag,
                              const DdqaoaConfig& config, int step, int depth,
                              long long cnots_per_layer,
                              const Statevector* prepared) {
  std::vector<double> grads = gradient(diag, st.params, prepared);
  // d/d(gamma * scale) = (1 / scale) * d/d(gamma)
  for (std::size_t i = 0; i < st.params.depth(); ++i) grads[i] /= st.scale;
  st.params =
      unflatten(st.adam.step(flatten(st.params, st.scale), grads), st.scale);

  Statevector state = prepare_qaoa_state(diag, st.params);
  const double energy = expectation(state, diag);
  st.history.push_back(energy);

  StepRecord rec;
  rec.step = step;
  rec.depth = depth;
  rec.energy = energy;
  rec.cnots_this_step = cnots_per_layer * depth;
  rec.success_prob = ground_state_probability(state, diag.ground_set);
  st.record.trace.push_back(rec);

  if (energy < st.record.best_energy - config.epsilon) {
    st.record.best_energy = energy;
    st.record.best_params = st.params;
    st.counter = 0;
  } else {
    ++st.counter;
  }
  return state;
}

}  // namespace

RunRecord run_ddqaoa(const DiagonalSpectrum& diag, const DdqaoaConfig& config,
                     std::uint64_t /*seed*/, long long cnots_per_layer) {
  config.validate();

  const double scale = gamma_coordinate_scale(diag, config);
  int depth = config.p0;
  LoopState st{config.p0 == 1
                   ? ParameterSchedule{{config.init_gamma / scale},
                                       {config.init_beta}}
                   : ramp_schedule(config.p0, config.init_gamma,
                                   config.init_beta, scale),
               AdamOptimizer(2 * static_cast<std::size_t>(depth)),
               RunRecord{},
               {},
               0,
               scale};
  st.record.best_energy = std::numeric_limits<double>::infinity();
  st.record.best_params = st.params;
  st.record.converged_reason = ConvergedReason::BudgetExhausted;

  Statevector state = Statevector::plus_state(static_cast<unsigned>(diag.n));
  bool state_valid = false;  // first step computes its own forward pass

  for (int t = 1; t <= config.n_opt_max; ++t) {
    state = optimization_step(st, diag, config, t, depth, cnots_per_layer,
                              state_valid ? &state : nullptr);
    state_valid = true;

    if (check_convergence(st.history, st.counter, config)) {
      if (depth == config.p_max) {
        st.record.converged_reason = ConvergedReason::PmaxPlateau;
        break;
      }
      // Transfer from the tracked best when it belongs to the current depth;
      // when the best predates a depth change, fall back to the live
      // parameters (same plateau, matching length).
      const ParameterSchedule& source =
          st.record.best_params.depth() == static_cast<std::size_t>(depth)
              ? st.record.best_params
              : st.params;
      st.params = transfer_parameters(source);
      ++depth;
      st.record.depth_change_steps.push_back(t);
      st.adam.reset(2 * static_cast<std::size_t>(depth));
      st.counter = 0;
      state_valid = false;  // parameters changed shape; recompute forward
    }
  }

  st.record.final_depth = depth;
  // A best_params entry from before the last depth change is still the
  // returned optimum; the trace keeps the final iterate's energy.
  return std::move(st.record);
}

RunRecord run_fixed_depth(const DiagonalSpectrum& diag, int p,
                          const DdqaoaConfig& config, std::uint64_t /*seed*/,
                          long long cnots_per_layer) {
  if (p < 1) throw std::invalid_argument("depth must be >= 1");
  config.validate();

  const double scale = gamma_coordinate_scale(diag, config);
  LoopState st{ramp_schedule(p, config.init_gamma, config.init_beta, scale),
               AdamOptimizer(2 * static_cast<std::size_t>(p)),
               RunRecord{},
               {},
               0,
               scale};
  st.record.best_energy = std::numeric_limits<double>::infinity();
  st.record.best_params = st.params;
  st.record.converged_reason = ConvergedReason::BudgetExhausted;

  Statevector state = Statevector::plus_state(static_cast<unsigned>(diag.n));
  bool state_valid = false;
  for (int t = 1; t <= config.n_opt_max; ++t) {
    state = optimization_step(st, diag, config, t, p, cnots_per_layer,
                              state_valid ? &state : nullptr);
    state_valid = true;
  }
  st.record.final_depth = p;
  return std::move(st.record);
}

}  // namespace qaoa
