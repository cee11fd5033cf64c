#include <doctest.h>

#include <cmath>

#include "qaoa/ddqaoa.hpp"
#include "qaoa/statevector.hpp"

using namespace qaoa;

namespace {

DiagonalSpectrum zero_spectrum(unsigned n) {
  IsingHamiltonian ising;
  ising.n = n;
  ising.fields.assign(n, 0.0);
  return diagonal_spectrum(ising);
}

DiagonalSpectrum pair_spectrum() {
  IsingHamiltonian ising;
  ising.n = 2;
  ising.fields = {0.0, 0.0};
  ising.couplings = {{0, 1, 1.0}};
  return diagonal_spectrum(ising);
}

}  // namespace

TEST_SUITE("ddqaoa") {

TEST_CASE("config validation") {
  DdqaoaConfig ok;
  CHECK_NOTHROW(ok.validate());
  DdqaoaConfig c1;
  c1.p0 = 0;
  CHECK_THROWS_AS(c1.validate(), std::invalid_argument);
  DdqaoaConfig c2;
  c2.p0 = 11;
  CHECK_THROWS_AS(c2.validate(), std::invalid_argument);
  DdqaoaConfig c3;
  c3.epsilon = 0.0;
  CHECK_THROWS_AS(c3.validate(), std::invalid_argument);
  DdqaoaConfig c4;
  c4.sigma = -1.0;
  CHECK_THROWS_AS(c4.validate(), std::invalid_argument);
  DdqaoaConfig c5;
  c5.patience_k = 1;
  CHECK_THROWS_AS(c5.validate(), std::invalid_argument);
  DdqaoaConfig c6;
  c6.n_opt_max = 0;
  CHECK_THROWS_AS(c6.validate(), std::invalid_argument);
}

TEST_CASE("check_convergence semantics") {
  DdqaoaConfig cfg;  // k = 20, sigma = 1e-6
  // Constant history of length >= 2: variance 0 < sigma.
  CHECK(check_convergence(std::vector<double>{5.0, 5.0}, 0, cfg));
  // Single entry: the variance branch requires two.
  CHECK(!check_convergence(std::vector<double>{5.0}, 0, cfg));
  // Strictly improving, high variance, counter far from k.
  CHECK(!check_convergence(std::vector<double>{9.0, 6.0, 3.0, 0.0}, 0, cfg));
  // Patience boundary: c == k fires regardless of history.
  CHECK(check_convergence(std::vector<double>{9.0, 6.0, 3.0}, 20, cfg));
  CHECK(!check_convergence(std::vector<double>{9.0, 6.0, 3.0}, 19, cfg));
  // Window is the last max(2, k/2) entries: early noise is ignored.
  std::vector<double> hist{100.0, -50.0, 70.0};
  hist.insert(hist.end(), 10, 1.0);
  CHECK(check_convergence(hist, 0, cfg));
  CHECK_THROWS_AS(check_convergence(std::vector<double>{}, 0, cfg),
                  std::invalid_argument);
}

TEST_CASE("transfer from depth 1 scales gamma up and beta down") {
  const ParameterSchedule next =
      transfer_parameters({{0.5}, {0.4}});
  REQUIRE(next.depth() == 2);
  CHECK(std::abs(next.gammas[0] - 0.5) <= 1e-15);
  CHECK(std::abs(next.gammas[1] - 0.6) <= 1e-15);
  CHECK(std::abs(next.betas[0] - 0.4) <= 1e-15);
  CHECK(std::abs(next.betas[1] - 0.32) <= 1e-15);
}

TEST_CASE("transfer at depth 2 interpolates linearly") {
  const ParameterSchedule next =
      transfer_parameters({{0.2, 0.4}, {0.1, 0.3}});
  REQUIRE(next.depth() == 3);
  CHECK(next.gammas[0] == 0.2);
  CHECK(next.gammas[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(next.gammas[2] == 0.4);
}

TEST_CASE("transfer at depth 4 uses the cubic interpolant") {
  // Quadratic samples in, quadratic values out.
  const std::vector<double> quad{0.0, 1.0 / 9.0, 4.0 / 9.0, 1.0};
  const ParameterSchedule next = transfer_parameters({quad, quad});
  REQUIRE(next.depth() == 5);
  const std::vector<double> expected{0.0, 1.0 / 16.0, 0.25, 9.0 / 16.0, 1.0};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(next.gammas[i] - expected[i]) <= 1e-12);
    CHECK(std::abs(next.betas[i] - expected[i]) <= 1e-12);
  }
}

TEST_CASE("transfer preserves endpoints for p >= 2") {
  for (std::size_t p : {2, 3, 4, 6}) {
    ParameterSchedule ps;
    for (std::size_t l = 0; l < p; ++l) {
      ps.gammas.push_back(0.1 * static_cast<double>(l * l) + 0.05);
      ps.betas.push_back(0.5 - 0.07 * static_cast<double>(l));
    }
    const ParameterSchedule next = transfer_parameters(ps);
    REQUIRE(next.depth() == p + 1);
    CHECK(next.gammas.front() == ps.gammas.front());
    CHECK(next.gammas.back() == ps.gammas.back());
    CHECK(next.betas.front() == ps.betas.front());
    CHECK(next.betas.back() == ps.betas.back());
  }
}

TEST_CASE("zero Hamiltonian: flat trace, growth on every variance fire") {
  const DiagonalSpectrum d = zero_spectrum(3);
  DdqaoaConfig cfg;
  const RunRecord r = run_ddqaoa(d, cfg, 9, 0);
  for (const StepRecord& s : r.trace) CHECK(s.energy == 0.0);
  CHECK(r.converged_reason == ConvergedReason::PmaxPlateau);
  CHECK(r.final_depth == cfg.p_max);
  // Variance fires from the second step on: one growth per step until p_max,
  // then the break.
  CHECK(r.depth_change_steps.size() ==
        static_cast<std::size_t>(cfg.p_max - 1));
  CHECK(r.trace.size() == static_cast<std::size_t>(cfg.p_max + 1));
}

TEST_CASE("two-qubit coupling: reaches near the ground energy") {
  const DiagonalSpectrum d = pair_spectrum();
  DdqaoaConfig cfg;
  const RunRecord r = run_ddqaoa(d, cfg, 1, 2);
  CHECK(r.best_energy <= -0.9);  // ground energy is -1
  CHECK(r.final_depth <= cfg.p_max);
  // Depth never decreases along the trace.
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    CHECK(r.trace[i].depth >= r.trace[i - 1].depth);
  // Best on record is consistent with the epsilon-filtered minimum.
  double min_energy = r.trace[0].energy;
  for (const StepRecord& s : r.trace)
    min_energy = std::min(min_energy, s.energy);
  CHECK(r.best_energy <= min_energy + cfg.epsilon);
  // The returned parameters reproduce the recorded best energy.
  CHECK(expectation(prepare_qaoa_state(d, r.best_params), d) ==
        doctest::Approx(r.best_energy).epsilon(1e-12));
}

TEST_CASE("runs are deterministic") {
  const DiagonalSpectrum d = pair_spectrum();
  DdqaoaConfig cfg;
  cfg.n_opt_max = 150;
  const RunRecord a = run_ddqaoa(d, cfg, 3, 2);
  const RunRecord b = run_ddqaoa(d, cfg, 3, 2);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].energy == b.trace[i].energy);
    CHECK(a.trace[i].depth == b.trace[i].depth);
  }
  CHECK(a.best_energy == b.best_energy);
  CHECK(a.best_params == b.best_params);
  CHECK(a.depth_change_steps == b.depth_change_steps);
}

TEST_CASE("fixed depth baseline") {
  const DiagonalSpectrum d = pair_spectrum();
  DdqaoaConfig cfg;

  // p = 1 lands within 1e-3 of the dense grid optimum.
  double grid_min = 1e300;
  for (double g = 0.0; g < 3.15; g += 0.01)
    for (double b = 0.0; b < 3.15; b += 0.01)
      grid_min = std::min(
          grid_min, expectation(prepare_qaoa_state(d, {{g}, {b}}), d));
  const RunRecord r1 = run_fixed_depth(d, 1, cfg, 0, 2);
  CHECK(std::abs(r1.best_energy - grid_min) <= 1e-3);

  // Trace depth column is constant and the budget is fully used.
  CHECK(r1.trace.size() == static_cast<std::size_t>(cfg.n_opt_max));
  for (const StepRecord& s : r1.trace) CHECK(s.depth == 1);
  CHECK(r1.converged_reason == ConvergedReason::BudgetExhausted);
  CHECK(r1.best_params.depth() == 1);

  // Flat zero trace on the zero Hamiltonian.
  DdqaoaConfig small = cfg;
  small.n_opt_max = 40;
  const RunRecord rz = run_fixed_depth(zero_spectrum(2), 3, small, 0, 0);
  for (const StepRecord& s : rz.trace) {
    CHECK(s.energy == 0.0);
    CHECK(s.depth == 3);
  }
  CHECK_THROWS_AS(run_fixed_depth(d, 0, cfg, 0, 0), std::invalid_argument);
}

TEST_CASE("cnot bookkeeping in the trace") {
  const DiagonalSpectrum d = pair_spectrum();
  DdqaoaConfig cfg;
  cfg.n_opt_max = 80;
  const RunRecord r = run_ddqaoa(d, cfg, 1, 2);
  for (const StepRecord& s : r.trace)
    CHECK(s.cnots_this_step == 2LL * s.depth);
}

}  // TEST_SUITE
