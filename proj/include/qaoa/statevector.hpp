#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qaoa/qubo.hpp"

namespace qaoa {

/// Variational angles for a depth-p circuit: gammas drive the cost layers,
/// betas the mixer layers, applied in order (gamma_1, beta_1), ...,
/// (gamma_p, beta_p).
struct ParameterSchedule {
  std::vector<double> gammas;
  std::vector<double> betas;

  std::size_t depth() const { return gammas.size(); }
  void validate() const;  // equal lengths, depth >= 1

  friend bool operator==(const ParameterSchedule&,
                         const ParameterSchedule&) = default;
};

/// Dense 2^n complex amplitude vector, little-endian basis indexing (bit i of
/// the index is qubit i, matching DiagonalSpectrum). Layer applications mutate
/// in place; copy first when the original is still needed.
class Statevector {
 public:
  static constexpr unsigned kMaxQubits = 24;

  static Statevector plus_state(unsigned n);
  static Statevector basis_state(unsigned n, std::uint64_t index);

  unsigned num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }
  std::span<std::complex<double>> amplitudes() { return amps_; }

  /// amp_k *= exp(-i * gamma * energies[k]); phase-only, norm preserving.
  void apply_cost_layer(const DiagonalSpectrum& diag, double gamma);

  /// exp(-i * beta * X_j) for every qubit j.
  void apply_mixer_layer(double beta);

  double norm_sqr() const;

  friend bool operator==(const Statevector&, const Statevector&) = default;

 private:
  explicit Statevector(unsigned n);

  unsigned n_;
  std::vector<std::complex<double>> amps_;
};

Statevector init_plus_state(unsigned n);

/// |+>^n followed by the alternating cost/mixer layers of the schedule.
Statevector prepare_qaoa_state(const DiagonalSpectrum& diag,
                               const ParameterSchedule& params);

/// sum_k |amp_k|^2 * energies[k]
double expectation(const Statevector& state, const DiagonalSpectrum& diag);

/// Exact gradient of expectation(prepare_qaoa_state(diag, params), diag) with
/// respect to [gamma_1..gamma_p, beta_1..beta_p], computed by one reverse
/// (adjoint) sweep through the layers. `prepared`, when given, must equal
/// prepare_qaoa_state(diag, params) and skips the forward pass.
std::vector<double> gradient(const DiagonalSpectrum& diag,
                             const ParameterSchedule& params,
                             const Statevector* prepared = nullptr);

/// Probability mass on a (possibly degenerate) set of basis states.
double ground_state_probability(const Statevector& state,
                                std::span<const std::uint64_t> ground_set);

/// Multinomial sample of measurement outcomes; deterministic per seed.
std::map<std::uint64_t, std::uint64_t> sample(const Statevector& state,
                                              std::uint64_t shots,
                                              std::uint64_t seed);

}  // namespace qaoa
