#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qaoa/kernels.hpp"
#include "qaoa/rng.hpp"

using namespace qaoa;
using cd = std::complex<double>;

namespace {

std::vector<cd> random_amps(SplitMix64& rng, std::size_t count) {
  std::vector<cd> v(count);
  for (auto& a : v) a = {rng.next_unit() - 0.5, rng.next_unit() - 0.5};
  return v;
}

std::vector<double> random_reals(SplitMix64& rng, std::size_t count,
                                 double scale) {
  std::vector<double> v(count);
  for (auto& x : v) x = (rng.next_unit() - 0.5) * scale;
  return v;
}

// Naive long-double references; the independent truth the two kernel tables
// are both held to.
long double naive_expectation(const std::vector<cd>& a,
                              const std::vector<double>& e) {
  long double s = 0.0L;
  for (std::size_t k = 0; k < a.size(); ++k)
    s += (static_cast<long double>(a[k].real()) * a[k].real() +
          static_cast<long double>(a[k].imag()) * a[k].imag()) *
         e[k];
  return s;
}

std::complex<long double> naive_weighted_inner(const std::vector<cd>& b,
                                               const std::vector<double>& w,
                                               const std::vector<cd>& k) {
  std::complex<long double> s{0.0L, 0.0L};
  for (std::size_t i = 0; i < b.size(); ++i)
    s += static_cast<long double>(w[i]) *
         std::conj(std::complex<long double>(b[i])) *
         std::complex<long double>(k[i]);
  return s;
}

std::complex<long double> naive_swap_inner(const std::vector<cd>& b,
                                           const std::vector<cd>& k,
                                           unsigned qubit) {
  std::complex<long double> s{0.0L, 0.0L};
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < b.size(); ++i)
    s += std::conj(std::complex<long double>(b[i])) *
         std::complex<long double>(k[i ^ mask]);
  return s;
}

const kernels::KernelTable* maybe_avx2() { return kernels::avx2_kernels(); }

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("active table resolves") {
  const auto& t = kernels::active_kernels();
  CHECK((std::string(t.name) == "scalar" || std::string(t.name) == "avx2"));
}

TEST_CASE("phase_apply agrees with libm across magnitudes") {
  const auto* avx2 = maybe_avx2();
  SplitMix64 rng(11);
  for (int mag = 0; mag <= 6; ++mag) {
    for (unsigned n = 1; n <= 8; ++n) {
      const std::size_t dim = std::size_t{1} << n;
      const auto base = random_amps(rng, dim);
      const auto energies =
          random_reals(rng, dim, std::pow(10.0, mag));
      const double gamma = 2.0 * rng.next_unit() - 1.0;

      auto ref = base;
      for (std::size_t k = 0; k < dim; ++k)
        ref[k] *= std::exp(cd(0.0, -gamma * energies[k]));

      auto got = base;
      kernels::scalar_kernels().phase_apply(got.data(), energies.data(), dim,
                                            gamma);
      for (std::size_t k = 0; k < dim; ++k)
        CHECK(std::abs(got[k] - ref[k]) <= 1e-12);

      if (avx2) {
        auto got2 = base;
        avx2->phase_apply(got2.data(), energies.data(), dim, gamma);
        for (std::size_t k = 0; k < dim; ++k)
          CHECK(std::abs(got2[k] - ref[k]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("mixer_qubit scalar/avx2 equivalence and unitarity") {
  const auto* avx2 = maybe_avx2();
  SplitMix64 rng(12);
  for (unsigned n = 1; n <= 8; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    auto a = random_amps(rng, dim);
    auto b = a;
    const double norm_before = kernels::scalar_kernels().norm_sqr(a.data(), dim);
    for (unsigned q = 0; q < n; ++q) {
      const double beta = 0.3 + 0.4 * q;
      kernels::scalar_kernels().mixer_qubit(a.data(), dim, q, std::cos(beta),
                                            std::sin(beta));
      if (avx2)
        avx2->mixer_qubit(b.data(), dim, q, std::cos(beta), std::sin(beta));
    }
    const double norm_after = kernels::scalar_kernels().norm_sqr(a.data(), dim);
    CHECK(norm_after == doctest::Approx(norm_before).epsilon(1e-12));
    if (avx2)
      for (std::size_t k = 0; k < dim; ++k)
        CHECK(std::abs(a[k] - b[k]) <= 1e-13);
  }
}

TEST_CASE("reductions match long-double references") {
  const auto* avx2 = maybe_avx2();
  SplitMix64 rng(13);
  for (unsigned n = 1; n <= 10; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    const auto a = random_amps(rng, dim);
    const auto b = random_amps(rng, dim);
    const auto e = random_reals(rng, dim, 1e4);

    const double exp_ref = static_cast<double>(naive_expectation(a, e));
    const auto wi_ref = naive_weighted_inner(a, e, b);

    for (const kernels::KernelTable* t :
         {&kernels::scalar_kernels(), avx2}) {
      if (!t) continue;
      CAPTURE(t->name);
      CHECK(std::abs(t->expectation(a.data(), e.data(), dim) - exp_ref) <=
            1e-9 * (1.0 + std::abs(exp_ref)));
      CHECK(std::abs(t->norm_sqr(a.data(), dim) -
                     static_cast<double>(naive_expectation(
                         a, std::vector<double>(dim, 1.0)))) <= 1e-11);
      const cd wi = t->weighted_inner(a.data(), e.data(), b.data(), dim);
      CHECK(std::abs(wi - cd(static_cast<double>(wi_ref.real()),
                             static_cast<double>(wi_ref.imag()))) <=
            1e-9 * (1.0 + std::abs(wi)));
      for (unsigned q = 0; q < n; ++q) {
        const auto si_ref = naive_swap_inner(a, b, q);
        const cd si = t->swap_inner(a.data(), b.data(), dim, q);
        CHECK(std::abs(si - cd(static_cast<double>(si_ref.real()),
                               static_cast<double>(si_ref.imag()))) <=
              1e-11 * (1.0 + std::abs(si)));
      }
    }
  }
}

TEST_CASE("diag_mul equivalence") {
  const auto* avx2 = maybe_avx2();
  SplitMix64 rng(14);
  for (unsigned n = 1; n <= 8; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    const auto src = random_amps(rng, dim);
    const auto e = random_reals(rng, dim, 100.0);
    std::vector<cd> d1(dim), d2(dim);
    kernels::scalar_kernels().diag_mul(d1.data(), e.data(), src.data(), dim);
    for (std::size_t k = 0; k < dim; ++k)
      CHECK(d1[k] == cd(e[k] * src[k].real(), e[k] * src[k].imag()));
    if (avx2) {
      avx2->diag_mul(d2.data(), e.data(), src.data(), dim);
      CHECK(d1 == d2);
    }
  }
}

TEST_CASE("kernels are deterministic for fixed input") {
  SplitMix64 rng(15);
  const std::size_t dim = 1u << 9;
  const auto a = random_amps(rng, dim);
  const auto e = random_reals(rng, dim, 1e3);
  const auto& t = kernels::active_kernels();
  CHECK(t.expectation(a.data(), e.data(), dim) ==
        t.expectation(a.data(), e.data(), dim));
  auto x = a, y = a;
  t.phase_apply(x.data(), e.data(), dim, 0.123);
  t.phase_apply(y.data(), e.data(), dim, 0.123);
  CHECK(x == y);
}

}  // TEST_SUITE
