#include "qaoa/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qaoa/kernels.hpp"
#include "qaoa/rng.hpp"

namespace qaoa {

void ParameterSchedule::validate() const {
  if (gammas.empty()) throw std::invalid_argument("schedule depth must be >= 1");
  if (gammas.size() != betas.size())
    throw std::invalid_argument("gamma/beta length mismatch");
}

Statevector::Statevector(unsigned n) : n_(n) {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("qubit count out of [1, " +
                                std::to_string(kMaxQubits) + "]");
  amps_.resize(std::size_t{1} << n);
}

Statevector Statevector::plus_state(unsigned n) {
  Statevector sv(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(sv.dim()));
  std::fill(sv.amps_.begin(), sv.amps_.end(), std::complex<double>{amp, 0.0});
  return sv;
}

Statevector Statevector::basis_state(unsigned n, std::uint64_t index) {
  Statevector sv(n);
  if (index >= sv.dim()) throw std::invalid_argument("basis index out of range");
  sv.amps_[index] = {1.0, 0.0};
  return sv;
}

void Statevector::apply_cost_layer(const DiagonalSpectrum& diag, double gamma) {
  if (diag.n != n_)
    throw std::invalid_argument("spectrum qubit count != state qubit count");
  kernels::active_kernels().phase_apply(amps_.data(), diag.energies.data(),
                                        amps_.size(), gamma);
}

void Statevector::apply_mixer_layer(double beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const auto& k = kernels::active_kernels();
  for (unsigned j = 0; j < n_; ++j)
    k.mixer_qubit(amps_.data(), amps_.size(), j, c, s);
}

double Statevector::norm_sqr() const {
  return kernels::active_kernels().norm_sqr(amps_.data(), amps_.size());
}

Statevector init_plus_state(unsigned n) { return Statevector::plus_state(n); }

Statevector prepare_qaoa_state(const DiagonalSpectrum& diag,
                               const ParameterSchedule& params) {
  params.validate();
  Statevector sv = Statevector::plus_state(static_cast<unsigned>(diag.n));
  for (std::size_t l = 0; l < params.depth(); ++l) {
    sv.apply_cost_layer(diag, params.gammas[l]);
    sv.apply_mixer_layer(params.betas[l]);
  }
  return sv;
}

double expectation(const Statevector& state, const DiagonalSpectrum& diag) {
  if (diag.n != state.num_qubits())
    throw std::invalid_argument("spectrum qubit count != state qubit count");
  return kernels::active_kernels().expectation(
      state.amplitudes().data(), diag.energies.data(), state.dim());
}

std::vector<double> gradient(const DiagonalSpectrum& diag,
                             const ParameterSchedule& params,
                             const Statevector* prepared) {
  params.validate();
  const std::size_t p = params.depth();
  const auto& k = kernels::active_kernels();

  // ket: state after all layers. bra: H |ket>, then both are walked backwards
  // through the circuit. For gate G with angle theta (unitary e^{-i theta G}),
  // dF/dtheta = 2 Im <bra| G |ket> evaluated after that gate.
  Statevector ket = prepared ? *prepared : prepare_qaoa_state(diag, params);
  Statevector bra = ket;
  k.diag_mul(bra.amplitudes().data(), diag.energies.data(),
             ket.amplitudes().data(), ket.dim());

  const unsigned n = ket.num_qubits();
  std::vector<double> grads(2 * p, 0.0);
  for (std::size_t l = p; l-- > 0;) {
    // Mixer layer l: G = sum_j X_j.
    std::complex<double> bracket{0.0, 0.0};
    for (unsigned j = 0; j < n; ++j)
      bracket += k.swap_inner(bra.amplitudes().data(), ket.amplitudes().data(),
                              ket.dim(), j);
    grads[p + l] = 2.0 * bracket.imag();
    const double c = std::cos(params.betas[l]);
    const double s = -std::sin(params.betas[l]);
    for (unsigned j = 0; j < n; ++j) {
      k.mixer_qubit(ket.amplitudes().data(), ket.dim(), j, c, s);
      k.mixer_qubit(bra.amplitudes().data(), bra.dim(), j, c, s);
    }

    // Cost layer l: G = diag(energies).
    const std::complex<double> wb = k.weighted_inner(
        bra.amplitudes().data(), diag.energies.data(), ket.amplitudes().data(),
        ket.dim());
    grads[l] = 2.0 * wb.imag();
    k.phase_apply(ket.amplitudes().data(), diag.energies.data(), ket.dim(),
                  -params.gammas[l]);
    k.phase_apply(bra.amplitudes().data(), diag.energies.data(), bra.dim(),
                  -params.gammas[l]);
  }
  return grads;
}

double ground_state_probability(const Statevector& state,
                                std::span<const std::uint64_t> ground_set) {
  double total = 0.0;
  for (std::uint64_t idx : ground_set) {
    if (idx >= state.dim())
      throw std::invalid_argument("ground-set index out of range");
    total += std::norm(state.amplitudes()[idx]);
  }
  return total;
}

std::map<std::uint64_t, std::uint64_t> sample(const Statevector& state,
                                              std::uint64_t shots,
                                              std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  std::vector<double> cdf(state.dim());
  double acc = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    acc += std::norm(state.amplitudes()[i]);
    cdf[i] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);  // guard against rounding shortfall

  SplitMix64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.next_unit();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(),
                                 static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    ++counts[idx];
  }
  return counts;
}

}  // namespace qaoa
