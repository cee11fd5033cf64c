// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; only reached through
// the dispatch table after a runtime CPU check.

#include "qaoa/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cstddef>

namespace qaoa::kernels {
namespace {

const __m256d kSignHi = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);  // flip lanes 1,3

// ---------------------------------------------------------------------------
// Vectorized sincos: Cody-Waite reduction by multiples of pi/2 (three-part
// split, 27 significant bits per part, exact for |x| up to ~5e7) followed by
// Taylor polynomials on [-pi/4, pi/4]. Verified against libm to ~1e-15.
// ---------------------------------------------------------------------------

inline void sincos4(__m256d x, __m256d* sin_out, __m256d* cos_out) {
  const __m256d two_over_pi = _mm256_set1_pd(0x1.45f306dc9c883p-1);
  const __m256d pio2_1 = _mm256_set1_pd(0x1.921fb54000000p+0);
  const __m256d pio2_2 = _mm256_set1_pd(0x1.10b4610000000p-30);
  const __m256d pio2_3 = _mm256_set1_pd(0x1.a62633145c06ep-58);

  const __m256d n = _mm256_round_pd(
      _mm256_mul_pd(x, two_over_pi),
      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, pio2_1, x);
  r = _mm256_fnmadd_pd(n, pio2_2, r);
  r = _mm256_fnmadd_pd(n, pio2_3, r);

  // Quadrant k = n mod 4 as a double in {0, 1, 2, 3}.
  const __m256d quarter = _mm256_mul_pd(n, _mm256_set1_pd(0.25));
  const __m256d k = _mm256_fnmadd_pd(_mm256_set1_pd(4.0),
                                     _mm256_floor_pd(quarter), n);

  const __m256d zz = _mm256_mul_pd(r, r);

  // sin(r) = r + r*zz*P(zz)
  __m256d p = _mm256_set1_pd(-0x1.ae7f3e733b81fp-41);   // -1/15!
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(0x1.6124613a86d09p-33));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(-0x1.ae64567f544e4p-26));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(0x1.71de3a556c734p-19));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(-0x1.a01a01a01a01ap-13));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(0x1.1111111111111p-7));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(-0x1.5555555555555p-3));
  const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, zz), p, r);

  // cos(r) = 1 + zz*Q(zz)
  __m256d q = _mm256_set1_pd(0x1.ae7f3e733b81fp-45);    // +1/16!
  q = _mm256_fmadd_pd(q, zz, _mm256_set1_pd(-0x1.93974a8c07c9dp-37));
  q = _mm256_fmadd_pd(q, zz, _mm256_set1_pd(0x1.1eed8eff8d898p-29));
  q = _mm256_fmadd_pd(q, zz, _mm256_set1_pd(-0x1.27e4fb7789f5cp-22));
  q = _mm256_fmadd_pd(q, zz, _mm256_set1_pd(0x1.a01a01a01a01ap-16));
  q = _mm256_fmadd_pd(q, zz, _mm256_set1_pd(-0x1.6c16c16c16c17p-10));
  q = _mm256_fmadd_pd(q, zz, _mm256_set1_pd(0x1.5555555555555p-5));
  q = _mm256_fmadd_pd(q, zz, _mm256_set1_pd(-0.5));
  const __m256d cos_r = _mm256_fmadd_pd(zz, q, _mm256_set1_pd(1.0));

  const __m256d m1 = _mm256_cmp_pd(k, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
  const __m256d m2 = _mm256_cmp_pd(k, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
  const __m256d m3 = _mm256_cmp_pd(k, _mm256_set1_pd(3.0), _CMP_EQ_OQ);
  const __m256d odd = _mm256_or_pd(m1, m3);
  const __m256d neg = _mm256_set1_pd(-0.0);

  // sin(x): quadrants 0..3 -> sin, cos, -sin, -cos
  __m256d s = _mm256_blendv_pd(sin_r, cos_r, odd);
  s = _mm256_xor_pd(s, _mm256_and_pd(_mm256_or_pd(m2, m3), neg));
  // cos(x): quadrants 0..3 -> cos, -sin, -cos, sin
  __m256d c = _mm256_blendv_pd(cos_r, sin_r, odd);
  c = _mm256_xor_pd(c, _mm256_and_pd(_mm256_or_pd(m1, m2), neg));

  *sin_out = s;
  *cos_out = c;
}

// Spread [a0, a1, a2, a3] into [a0, a0, a1, a1] and [a2, a2, a3, a3].
inline void spread2(__m256d v, __m256d* lo, __m256d* hi) {
  const __m256d even = _mm256_unpacklo_pd(v, v);  // [a0, a0, a2, a2]
  const __m256d odd = _mm256_unpackhi_pd(v, v);   // [a1, a1, a3, a3]
  *lo = _mm256_permute2f128_pd(even, odd, 0x20);
  *hi = _mm256_permute2f128_pd(even, odd, 0x31);
}

// Vector Kahan accumulator (4 independent lanes, merged in fixed order).
struct KahanVec {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  inline void add(__m256d x) {
    const __m256d y = _mm256_sub_pd(x, comp);
    const __m256d t = _mm256_add_pd(sum, y);
    comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
    sum = t;
  }

  double total() const {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, sum);
    return ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
  }
};

struct KahanScalar {
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
  double* a = reinterpret_cast<double*>(amps);
  const __m256d neg_gamma = _mm256_set1_pd(-gamma);
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d theta =
        _mm256_mul_pd(_mm256_loadu_pd(energies + k), neg_gamma);
    __m256d s, c;
    sincos4(theta, &s, &c);
    __m256d c_lo, c_hi, s_lo, s_hi;
    spread2(c, &c_lo, &c_hi);
    spread2(s, &s_lo, &s_hi);
    const __m256d v1 = _mm256_loadu_pd(a + 2 * k);
    const __m256d v2 = _mm256_loadu_pd(a + 2 * k + 4);
    // (re + i*im) * (c + i*s): addsub pairs (re*c -/+ im*s, im*c +/- re*s)
    const __m256d sw1 = _mm256_permute_pd(v1, 0x5);
    const __m256d sw2 = _mm256_permute_pd(v2, 0x5);
    _mm256_storeu_pd(a + 2 * k,
                     _mm256_addsub_pd(_mm256_mul_pd(v1, c_lo),
                                      _mm256_mul_pd(sw1, s_lo)));
    _mm256_storeu_pd(a + 2 * k + 4,
                     _mm256_addsub_pd(_mm256_mul_pd(v2, c_hi),
                                      _mm256_mul_pd(sw2, s_hi)));
  }
  if (k < count)
    scalar_kernels().phase_apply(amps + k, energies + k, count - k, gamma);
}

void mixer_qubit(std::complex<double>* amps, std::size_t count, unsigned qubit,
                 double cos_b, double sin_b) {
  double* a = reinterpret_cast<double*>(amps);
  const __m256d cv = _mm256_set1_pd(cos_b);
  const __m256d sv = _mm256_set1_pd(sin_b);
  if (qubit == 0) {
    // Pairs are adjacent: one register holds one (a, b) pair.
    for (std::size_t base = 0; base < count; base += 2) {
      const __m256d v = _mm256_loadu_pd(a + 2 * base);
      // [ib, -rb, ia, -ra]
      const __m256d w = _mm256_xor_pd(
          _mm256_permute4x64_pd(v, _MM_SHUFFLE(0, 1, 2, 3)), kSignHi);
      _mm256_storeu_pd(a + 2 * base,
                       _mm256_fmadd_pd(v, cv, _mm256_mul_pd(w, sv)));
    }
    return;
  }
  const std::size_t stride = std::size_t{1} << qubit;  // >= 2 complex
  for (std::size_t base = 0; base < count; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; off += 2) {
      double* pa = a + 2 * (base + off);
      double* pb = a + 2 * (base + off + stride);
      const __m256d va = _mm256_loadu_pd(pa);
      const __m256d vb = _mm256_loadu_pd(pb);
      const __m256d wa =
          _mm256_xor_pd(_mm256_permute_pd(va, 0x5), kSignHi);  // [ia,-ra,..]
      const __m256d wb = _mm256_xor_pd(_mm256_permute_pd(vb, 0x5), kSignHi);
      _mm256_storeu_pd(pa, _mm256_fmadd_pd(va, cv, _mm256_mul_pd(wb, sv)));
      _mm256_storeu_pd(pb, _mm256_fmadd_pd(vb, cv, _mm256_mul_pd(wa, sv)));
    }
  }
}

void diag_mul(std::complex<double>* dst, const double* diag,
              const std::complex<double>* src, std::size_t count) {
  double* d = reinterpret_cast<double*>(dst);
  const double* s = reinterpret_cast<const double*>(src);
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    __m256d e_lo, e_hi;
    spread2(_mm256_loadu_pd(diag + k), &e_lo, &e_hi);
    _mm256_storeu_pd(d + 2 * k,
                     _mm256_mul_pd(_mm256_loadu_pd(s + 2 * k), e_lo));
    _mm256_storeu_pd(d + 2 * k + 4,
                     _mm256_mul_pd(_mm256_loadu_pd(s + 2 * k + 4), e_hi));
  }
  if (k < count) scalar_kernels().diag_mul(dst + k, diag + k, src + k,
                                           count - k);
}

double norm_sqr(const std::complex<double>* amps, std::size_t count) {
  const double* a = reinterpret_cast<const double*>(amps);
  KahanVec acc;
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d v1 = _mm256_loadu_pd(a + 2 * k);
    const __m256d v2 = _mm256_loadu_pd(a + 2 * k + 4);
    acc.add(_mm256_hadd_pd(_mm256_mul_pd(v1, v1), _mm256_mul_pd(v2, v2)));
  }
  KahanScalar tail;
  for (; k < count; ++k)
    tail.add(amps[k].real() * amps[k].real() +
             amps[k].imag() * amps[k].imag());
  return acc.total() + tail.sum;
}

double expectation(const std::complex<double>* amps, const double* energies,
                   std::size_t count) {
  const double* a = reinterpret_cast<const double*>(amps);
  KahanVec acc;
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d v1 = _mm256_loadu_pd(a + 2 * k);
    const __m256d v2 = _mm256_loadu_pd(a + 2 * k + 4);
    // hadd yields probabilities in order [p0, p2, p1, p3]
    const __m256d p =
        _mm256_hadd_pd(_mm256_mul_pd(v1, v1), _mm256_mul_pd(v2, v2));
    const __m256d e = _mm256_permute4x64_pd(_mm256_loadu_pd(energies + k),
                                            _MM_SHUFFLE(3, 1, 2, 0));
    acc.add(_mm256_mul_pd(p, e));
  }
  KahanScalar tail;
  for (; k < count; ++k) {
    const double p = amps[k].real() * amps[k].real() +
                     amps[k].imag() * amps[k].imag();
    tail.add(p * energies[k]);
  }
  return acc.total() + tail.sum;
}

// conj(b) * k accumulation for one register pair; re parts via hadd,
// im parts via hsub, both in lane order [0, 2, 1, 3].
inline void conj_mul_accumulate(__m256d vb1, __m256d vk1, __m256d vb2,
                                __m256d vk2, __m256d weight, KahanVec* re,
                                KahanVec* im) {
  const __m256d re_terms =
      _mm256_hadd_pd(_mm256_mul_pd(vb1, vk1), _mm256_mul_pd(vb2, vk2));
  const __m256d ks1 = _mm256_permute_pd(vk1, 0x5);
  const __m256d ks2 = _mm256_permute_pd(vk2, 0x5);
  const __m256d im_terms =
      _mm256_hsub_pd(_mm256_mul_pd(vb1, ks1), _mm256_mul_pd(vb2, ks2));
  re->add(_mm256_mul_pd(re_terms, weight));
  im->add(_mm256_mul_pd(im_terms, weight));
}

std::complex<double> weighted_inner(const std::complex<double>* bra,
                                    const double* w,
                                    const std::complex<double>* ket,
                                    std::size_t count) {
  const double* b = reinterpret_cast<const double*>(bra);
  const double* kt = reinterpret_cast<const double*>(ket);
  KahanVec re, im;
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d wp = _mm256_permute4x64_pd(_mm256_loadu_pd(w + k),
                                             _MM_SHUFFLE(3, 1, 2, 0));
    conj_mul_accumulate(_mm256_loadu_pd(b + 2 * k),
                        _mm256_loadu_pd(kt + 2 * k),
                        _mm256_loadu_pd(b + 2 * k + 4),
                        _mm256_loadu_pd(kt + 2 * k + 4), wp, &re, &im);
  }
  KahanScalar re_t, im_t;
  for (; k < count; ++k) {
    const double br = bra[k].real(), bi = bra[k].imag();
    const double kr = ket[k].real(), ki = ket[k].imag();
    re_t.add(w[k] * (br * kr + bi * ki));
    im_t.add(w[k] * (br * ki - bi * kr));
  }
  return {re.total() + re_t.sum, im.total() + im_t.sum};
}

std::complex<double> swap_inner(const std::complex<double>* bra,
                                const std::complex<double>* ket,
                                std::size_t count, unsigned qubit) {
  const double* b = reinterpret_cast<const double*>(bra);
  const double* kt = reinterpret_cast<const double*>(ket);
  if (count < 4) return scalar_kernels().swap_inner(bra, ket, count, qubit);
  const __m256d ones = _mm256_set1_pd(1.0);
  KahanVec re, im;
  if (qubit == 0) {
    for (std::size_t base = 0; base < count; base += 4) {
      const __m256d vb1 = _mm256_loadu_pd(b + 2 * base);
      const __m256d vb2 = _mm256_loadu_pd(b + 2 * base + 4);
      // Swap the two complex entries within each register.
      const __m256d vk1 = _mm256_permute4x64_pd(
          _mm256_loadu_pd(kt + 2 * base), _MM_SHUFFLE(1, 0, 3, 2));
      const __m256d vk2 = _mm256_permute4x64_pd(
          _mm256_loadu_pd(kt + 2 * base + 4), _MM_SHUFFLE(1, 0, 3, 2));
      conj_mul_accumulate(vb1, vk1, vb2, vk2, ones, &re, &im);
    }
    return {re.total(), im.total()};
  }
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < count; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; off += 2) {
      const std::size_t lo = base + off;
      const std::size_t hi = base + off + stride;
      conj_mul_accumulate(_mm256_loadu_pd(b + 2 * lo),
                          _mm256_loadu_pd(kt + 2 * hi),
                          _mm256_loadu_pd(b + 2 * hi),
                          _mm256_loadu_pd(kt + 2 * lo), ones, &re, &im);
    }
  }
  return {re.total(), im.total()};
}

}  // namespace

const KernelTable* avx2_kernels() {
  __builtin_cpu_init();
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return nullptr;
  static const KernelTable table = {
      "avx2",        phase_apply, mixer_qubit,    diag_mul,
      norm_sqr,      expectation, weighted_inner, swap_inner,
  };
  return &table;
}

}  // namespace qaoa::kernels

#else

namespace qaoa::kernels {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace qaoa::kernels

#endif
