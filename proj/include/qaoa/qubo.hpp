#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qaoa/cspp.hpp"

namespace qaoa {

struct Penalties {
  double rho = 0.0;     // resource penalty weight
  double lambda = 0.0;  // flow penalty weight (shared across all flow terms)
};

/// Minimize x^T Q x + g^T x + c0 over binary x. Q is symmetric with zero
/// diagonal; diagonal contributions are folded into the linear vector
/// (x^2 = x for binaries).
struct QuboModel {
  std::size_t n = 0;
  std::vector<double> q;       // row-major n x n
  std::vector<double> linear;  // g
  double constant = 0.0;       // c0
  Penalties penalties;

  double& at(std::size_t i, std::size_t j) { return q[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return q[i * n + j]; }

  double value(std::span<const std::uint8_t> bits) const;
};

struct IsingCoupling {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double value = 0.0;

  friend bool operator==(const IsingCoupling&, const IsingCoupling&) = default;
};

/// Diagonal operator E0 + sum_i h_i Z_i + sum_{i<j} J_ij Z_i Z_j.
/// Couplings are sorted by (i, j) and never store zero values, so
/// couplings.size() is the ZZ-term count used for CNOT accounting.
struct IsingHamiltonian {
  std::size_t n = 0;
  std::vector<double> fields;  // h
  std::vector<IsingCoupling> couplings;
  double offset = 0.0;  // E0
};

/// Exhaustively tabulated diagonal: energies[k] for basis index k under
/// little-endian bit order (bit i of k is qubit i).
struct DiagonalSpectrum {
  std::size_t n = 0;
  std::vector<double> energies;
  double e_min = 0.0;
  double e_max = 0.0;
  std::vector<std::uint64_t> ground_set;  // indices within 1e-9 of e_min
};

/// Expands cost + rho * (resource deviation)^2 + lambda * (five squared flow
/// terms) into (Q, g, c0). The resource inequality is encoded as the squared
/// deviation from the budget, with no slack variables.
QuboModel build_penalty_hamiltonian(const CsppInstance& instance, double rho,
                                    double lambda);

/// rho = lambda = 2 * (total edge cost) + 1.
Penalties default_penalties(const CsppInstance& instance);

/// Substitutes x_i = (1 - s_i) / 2. Couplings with |J| < 1e-12 are dropped
/// (exact-zero cancellations from integer data must not inflate CNOT counts).
IsingHamiltonian qubo_to_ising(const QuboModel& qubo);

/// Energy with the convention s_i = +1 for bit 0 and s_i = -1 for bit 1
/// (Pauli-Z eigenvalues).
double energy_of_bitstring(const IsingHamiltonian& ising,
                           std::span<const std::uint8_t> z);

/// Tabulates all 2^n energies. Throws when n exceeds max_qubits (memory
/// guard). Ground-state degeneracy uses absolute tolerance 1e-9.
DiagonalSpectrum diagonal_spectrum(const IsingHamiltonian& ising,
                                   std::size_t max_qubits = 24);

/// Text dump: "offset <E0>", then "h <i> <v>" lines, then "J <i> <j> <v>"
/// lines, sorted. Round-trippable float formatting; used for golden files.
void write_hamiltonian_dump(const IsingHamiltonian& ising, std::ostream& out);
std::string hamiltonian_dump(const IsingHamiltonian& ising);

}  // namespace qaoa
