#include "qaoa/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qaoa {

double QuboModel::value(std::span<const std::uint8_t> bits) const {
  if (bits.size() != n)
    throw std::invalid_argument("bitstring length != QUBO size");
  double acc = constant;
  for (std::size_t i = 0; i < n; ++i) {
    if (!bits[i]) continue;
    acc += linear[i];
    for (std::size_t j = i + 1; j < n; ++j)
      if (bits[j]) acc += 2.0 * at(i, j);
  }
  return acc;
}

namespace {

// Adds w * (sum_i a_i x_i + b)^2 to the accumulating (Q, g, c0), folding the
// x_i^2 = x_i diagonal into the linear part.
void add_squared_form(QuboModel& m, std::span<const double> a, double b,
                      double w) {
  for (std::size_t i = 0; i < m.n; ++i) {
    if (a[i] == 0.0) continue;
    m.linear[i] += w * (a[i] * a[i] + 2.0 * b * a[i]);
    for (std::size_t j = i + 1; j < m.n; ++j) {
      if (a[j] == 0.0) continue;
      const double q = w * a[i] * a[j];
      m.at(i, j) += q;
      m.at(j, i) += q;
    }
  }
  m.constant += w * b * b;
}

}  // namespace

QuboModel build_penalty_hamiltonian(const CsppInstance& instance, double rho,
                                    double lambda) {
  if (rho <= 0.0 || lambda <= 0.0)
    throw std::invalid_argument("penalty weights must be positive");

  QuboModel m;
  m.n = instance.num_edges();
  m.q.assign(m.n * m.n, 0.0);
  m.linear.assign(m.n, 0.0);
  m.penalties = {rho, lambda};

  const auto& edges = instance.edges();

  // Cost term: sum c_ij x_ij.
  for (std::size_t i = 0; i < m.n; ++i) m.linear[i] += edges[i].cost;

  // Resource term: rho * (sum r_ij x_ij - r_limit)^2.
  std::vector<double> coeff(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) coeff[i] = edges[i].resource;
  add_squared_form(m, coeff, -instance.resource_limit(), rho);

  const int s = instance.source();
  const int t = instance.target();

  // Exactly one edge out of the source, none into it.
  std::fill(coeff.begin(), coeff.end(), 0.0);
  for (std::size_t i = 0; i < m.n; ++i) coeff[i] = edges[i].u == s ? 1.0 : 0.0;
  add_squared_form(m, coeff, -1.0, lambda);
  std::fill(coeff.begin(), coeff.end(), 0.0);
  for (std::size_t i = 0; i < m.n; ++i) coeff[i] = edges[i].v == s ? 1.0 : 0.0;
  add_squared_form(m, coeff, 0.0, lambda);

  // Exactly one edge into the target, none out of it.
  std::fill(coeff.begin(), coeff.end(), 0.0);
  for (std::size_t i = 0; i < m.n; ++i) coeff[i] = edges[i].v == t ? 1.0 : 0.0;
  add_squared_form(m, coeff, -1.0, lambda);
  std::fill(coeff.begin(), coeff.end(), 0.0);
  for (std::size_t i = 0; i < m.n; ++i) coeff[i] = edges[i].u == t ? 1.0 : 0.0;
  add_squared_form(m, coeff, 0.0, lambda);

  // In-degree equals out-degree at every interior vertex.
  for (int v = 0; v < instance.num_nodes(); ++v) {
    if (v == s || v == t) continue;
    std::fill(coeff.begin(), coeff.end(), 0.0);
    bool touched = false;
    for (std::size_t i = 0; i < m.n; ++i) {
      if (edges[i].v == v) {
        coeff[i] += 1.0;
        touched = true;
      }
      if (edges[i].u == v) {
        coeff[i] -= 1.0;
        touched = true;
      }
    }
    if (touched) add_squared_form(m, coeff, 0.0, lambda);
  }

  return m;
}

Penalties default_penalties(const CsppInstance& instance) {
  double total_cost = 0.0;
  for (const Edge& e : instance.edges()) total_cost += e.cost;
  const double w = 2.0 * total_cost + 1.0;
  return {w, w};
}

IsingHamiltonian qubo_to_ising(const QuboModel& qubo) {
  constexpr double kDropTolerance = 1e-12;

  IsingHamiltonian ising;
  ising.n = qubo.n;
  ising.fields.assign(qubo.n, 0.0);
  ising.offset = qubo.constant;

  // x_i = (1 - s_i) / 2:
  //   g_i x_i               -> g_i / 2 - (g_i / 2) s_i
  //   2 Q_ij x_i x_j (i<j)  -> Q_ij/2 (1 - s_i - s_j + s_i s_j)
  for (std::size_t i = 0; i < qubo.n; ++i) {
    ising.offset += 0.5 * qubo.linear[i];
    ising.fields[i] -= 0.5 * qubo.linear[i];
  }
  for (std::size_t i = 0; i < qubo.n; ++i) {
    for (std::size_t j = i + 1; j < qubo.n; ++j) {
      const double half = 0.5 * qubo.at(i, j);
      if (half == 0.0) continue;
      ising.offset += half;
      ising.fields[i] -= half;
      ising.fields[j] -= half;
      if (std::abs(half) >= kDropTolerance)
        ising.couplings.push_back({i, j, half});
    }
  }
  return ising;
}

double energy_of_bitstring(const IsingHamiltonian& ising,
                           std::span<const std::uint8_t> z) {
  if (z.size() != ising.n)
    throw std::invalid_argument("bitstring length != qubit count");
  double acc = ising.offset;
  for (std::size_t i = 0; i < ising.n; ++i)
    acc += z[i] ? -ising.fields[i] : ising.fields[i];
  for (const IsingCoupling& c : ising.couplings)
    acc += (z[c.i] ^ z[c.j]) ? -c.value : c.value;
  return acc;
}

DiagonalSpectrum diagonal_spectrum(const IsingHamiltonian& ising,
                                   std::size_t max_qubits) {
  if (ising.n == 0) throw std::invalid_argument("empty Hamiltonian");
  if (ising.n > max_qubits)
    throw std::invalid_argument("qubit count " + std::to_string(ising.n) +
                                " exceeds spectrum cap " +
                                std::to_string(max_qubits));

  DiagonalSpectrum spec;
  spec.n = ising.n;
  const std::uint64_t dim = std::uint64_t{1} << ising.n;
  spec.energies.resize(dim);

  // Same accumulation order as energy_of_bitstring so entries match it
  // exactly, bit for bit.
  for (std::uint64_t k = 0; k < dim; ++k) {
    double acc = ising.offset;
    for (std::size_t i = 0; i < ising.n; ++i)
      acc += (k >> i) & 1 ? -ising.fields[i] : ising.fields[i];
    for (const IsingCoupling& c : ising.couplings)
      acc += ((k >> c.i) ^ (k >> c.j)) & 1 ? -c.value : c.value;
    spec.energies[k] = acc;
  }

  spec.e_min = spec.energies[0];
  spec.e_max = spec.energies[0];
  for (double e : spec.energies) {
    spec.e_min = std::min(spec.e_min, e);
    spec.e_max = std::max(spec.e_max, e);
  }
  constexpr double kGroundTolerance = 1e-9;
  for (std::uint64_t k = 0; k < dim; ++k)
    if (spec.energies[k] <= spec.e_min + kGroundTolerance)
      spec.ground_set.push_back(k);
  return spec;
}

void write_hamiltonian_dump(const IsingHamiltonian& ising, std::ostream& out) {
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << "offset " << fmt(ising.offset) << "\n";
  for (std::size_t i = 0; i < ising.n; ++i)
    out << "h " << i << " " << fmt(ising.fields[i]) << "\n";
  for (const IsingCoupling& c : ising.couplings)
    out << "J " << c.i << " " << c.j << " " << fmt(c.value) << "\n";
}

std::string hamiltonian_dump(const IsingHamiltonian& ising) {
  std::ostringstream ss;
  write_hamiltonian_dump(ising, ss);
  return ss.str();
}

}  // namespace qaoa
