#pragma once

#include <complex>
#include <cstddef>

namespace qaoa::kernels {

/// Hot inner loops of the statevector engine. Every kernel has a scalar
/// reference implementation and (on x86-64) an AVX2+FMA variant; the two are
/// equivalence-tested against each other. All reductions use compensated
/// summation in a fixed order, so a given table is bitwise deterministic for
/// a fixed input.
struct KernelTable {
  const char* name;

  /// amps[k] *= exp(-i * gamma * energies[k])
  void (*phase_apply)(std::complex<double>* amps, const double* energies,
                      std::size_t count, double gamma);

  /// exp(-i * beta * X_qubit): each pair (a, b) differing in `qubit` maps to
  /// (a*cos - i*b*sin, b*cos - i*a*sin). cos_b/sin_b are passed in so one
  /// evaluation serves the whole sweep.
  void (*mixer_qubit)(std::complex<double>* amps, std::size_t count,
                      unsigned qubit, double cos_b, double sin_b);

  /// dst[k] = diag[k] * src[k]
  void (*diag_mul)(std::complex<double>* dst, const double* diag,
                   const std::complex<double>* src, std::size_t count);

  /// sum_k |amps[k]|^2
  double (*norm_sqr)(const std::complex<double>* amps, std::size_t count);

  /// sum_k |amps[k]|^2 * energies[k]
  double (*expectation)(const std::complex<double>* amps,
                        const double* energies, std::size_t count);

  /// sum_k conj(bra[k]) * w[k] * ket[k]
  std::complex<double> (*weighted_inner)(const std::complex<double>* bra,
                                         const double* w,
                                         const std::complex<double>* ket,
                                         std::size_t count);

  /// sum_k conj(bra[k]) * ket[k ^ (1 << qubit)], i.e. <bra|X_qubit|ket>
  std::complex<double> (*swap_inner)(const std::complex<double>* bra,
                                     const std::complex<double>* ket,
                                     std::size_t count, unsigned qubit);
};

const KernelTable& scalar_kernels();

/// AVX2+FMA table, or nullptr when the build target or the running CPU lacks
/// support.
const KernelTable* avx2_kernels();

/// Table used by the engine: AVX2 when available, scalar otherwise. The
/// QAOA_KERNELS environment variable ("auto", "scalar", "avx2") overrides;
/// resolved once on first call.
const KernelTable& active_kernels();

}  // namespace qaoa::kernels
