#include <cmath>
#include <complex>
#include <cstddef>

#include "qaoa/kernels.hpp"

namespace qaoa::kernels {
namespace {

// Kahan accumulator; compensated so reduction error stays at the epsilon
// level independent of vector length (the engine promises 1e-9-level
// expectation accuracy on penalty-scale energies).
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

void phase_apply(std::complex<double>* amps, const double* energies,
                 std::size_t count, double gamma) {
  for (std::size_t k = 0; k < count; ++k) {
    const double theta = -gamma * energies[k];
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double re = amps[k].real();
    const double im = amps[k].imag();
    amps[k] = {re * c - im * s, im * c + re * s};
  }
}

void mixer_qubit(std::complex<double>* amps, std::size_t count, unsigned qubit,
                 double cos_b, double sin_b) {
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < count; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      std::complex<double>& a = amps[base + off];
      std::complex<double>& b = amps[base + off + stride];
      const double ar = a.real(), ai = a.imag();
      const double br = b.real(), bi = b.imag();
      a = {ar * cos_b + bi * sin_b, ai * cos_b - br * sin_b};
      b = {br * cos_b + ai * sin_b, bi * cos_b - ar * sin_b};
    }
  }
}

void diag_mul(std::complex<double>* dst, const double* diag,
              const std::complex<double>* src, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k)
    dst[k] = {diag[k] * src[k].real(), diag[k] * src[k].imag()};
}

double norm_sqr(const std::complex<double>* amps, std::size_t count) {
  Kahan acc;
  for (std::size_t k = 0; k < count; ++k)
    acc.add(amps[k].real() * amps[k].real() + amps[k].imag() * amps[k].imag());
  return acc.sum;
}

double expectation(const std::complex<double>* amps, const double* energies,
                   std::size_t count) {
  Kahan acc;
  for (std::size_t k = 0; k < count; ++k) {
    const double p =
        amps[k].real() * amps[k].real() + amps[k].imag() * amps[k].imag();
    acc.add(p * energies[k]);
  }
  return acc.sum;
}

std::complex<double> weighted_inner(const std::complex<double>* bra,
                                    const double* w,
                                    const std::complex<double>* ket,
                                    std::size_t count) {
  Kahan re, im;
  for (std::size_t k = 0; k < count; ++k) {
    const double br = bra[k].real(), bi = bra[k].imag();
    const double kr = ket[k].real(), ki = ket[k].imag();
    re.add(w[k] * (br * kr + bi * ki));
    im.add(w[k] * (br * ki - bi * kr));
  }
  return {re.sum, im.sum};
}

std::complex<double> swap_inner(const std::complex<double>* bra,
                                const std::complex<double>* ket,
                                std::size_t count, unsigned qubit) {
  const std::size_t stride = std::size_t{1} << qubit;
  Kahan re, im;
  for (std::size_t base = 0; base < count; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::complex<double>& blo = bra[base + off];
      const std::complex<double>& bhi = bra[base + off + stride];
      const std::complex<double>& klo = ket[base + off];
      const std::complex<double>& khi = ket[base + off + stride];
      re.add(blo.real() * khi.real() + blo.imag() * khi.imag());
      im.add(blo.real() * khi.imag() - blo.imag() * khi.real());
      re.add(bhi.real() * klo.real() + bhi.imag() * klo.imag());
      im.add(bhi.real() * klo.imag() - bhi.imag() * klo.real());
    }
  }
  return {re.sum, im.sum};
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table = {
      "scalar",      phase_apply, mixer_qubit,    diag_mul,
      norm_sqr,      expectation, weighted_inner, swap_inner,
  };
  return table;
}

}  // namespace qaoa::kernels
