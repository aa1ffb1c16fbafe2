#include <cmath>
#include <limits>

#include "hypertree/kernels.hpp"

#if defined(__x86_64__)
#include <immintrin.h>

namespace hypertree::kernels {
namespace {

#define AVX2_FN __attribute__((target("avx2,fma")))

// log for positive normal doubles: x = m 2^e with m in [sqrt(1/2), sqrt(2)),
// log m = 2 atanh(f), f = (m-1)/(m+1), |f| < 0.172, summed to f^23.
AVX2_FN inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3ff0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  // Biased exponent as a double via the 2^52 trick (no 64-bit int convert in AVX2).
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  const __m256d two52 = _mm256_set1_pd(4503599627370496.0);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(exp_bits, _mm256_castpd_si256(two52))), two52);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d f = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d f2 = _mm256_mul_pd(f, f);
  __m256d poly = _mm256_set1_pd(1.0 / 23);
  for (int k = 21; k >= 1; k -= 2) poly = _mm256_fmadd_pd(poly, f2, _mm256_set1_pd(1.0 / k));
  const __m256d log_m = _mm256_mul_pd(_mm256_add_pd(f, f), poly);

  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  return _mm256_fmadd_pd(e, ln2_hi, _mm256_fmadd_pd(e, ln2_lo, log_m));
}

struct GResult {
  __m256d value;
  __m256d invalid;
};

AVX2_FN inline GResult g_pd(__m256d x) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d invalid = _mm256_cmp_pd(x, _mm256_set1_pd(-1e-15), _CMP_LT_OQ);
  const __m256d tiny = _mm256_cmp_pd(x, _mm256_set1_pd(1e-300), _CMP_LE_OQ);
  const __m256d safe = _mm256_max_pd(x, _mm256_set1_pd(1e-300));
  const __m256d v = _mm256_mul_pd(safe, log_pd(safe));
  return {_mm256_blendv_pd(v, zero, tiny), invalid};
}

}  // namespace

AVX2_FN void log_batch_avx2(const double* x, double* out, std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) _mm256_storeu_pd(out + i, log_pd(_mm256_loadu_pd(x + i)));
  if (i < count) log_batch_scalar(x + i, out + i, count - i);
}

AVX2_FN void phi_row_avx2(double alpha, const double* beta, std::size_t count, double r, double s,
                          double* out) {
  const double ninf = -std::numeric_limits<double>::infinity();
  if (alpha < -1e-15) {
    for (std::size_t i = 0; i < count; ++i) out[i] = ninf;
    return;
  }
  const double ga = alpha <= 1e-300 ? 0.0 : alpha * std::log(alpha);
  const double e = r * s - r - s;
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vr1 = _mm256_set1_pd(r - 1);
  const __m256d lr1 = _mm256_set1_pd(std::log(r - 1));
  const __m256d ve = _mm256_set1_pd(e);
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d w0 = _mm256_set1_pd(1 - (s - 1) * alpha);
  const __m256d cb = _mm256_set1_pd(2 / (s - 1));
  const __m256d cz = _mm256_set1_pd(1 / (s * (s - 1)));
  const __m256d cw = _mm256_set1_pd(1 / (s - 1));
  const __m256d vga = _mm256_set1_pd(ga);
  const __m256d vninf = _mm256_set1_pd(ninf);

  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d b = _mm256_loadu_pd(beta + i);
    const __m256d u = _mm256_add_pd(va, b);
    const GResult gb = g_pd(b);
    const GResult gu = g_pd(u);
    const GResult gv = g_pd(_mm256_sub_pd(vr1, u));
    const GResult gz = g_pd(_mm256_fnmadd_pd(vs, b, ve));
    const GResult gw = g_pd(_mm256_sub_pd(w0, b));
    __m256d acc = _mm256_fmadd_pd(u, lr1, gu.value);
    acc = _mm256_add_pd(acc, gv.value);
    acc = _mm256_fnmadd_pd(cb, gb.value, acc);
    acc = _mm256_sub_pd(acc, vga);
    acc = _mm256_fnmadd_pd(cz, gz.value, acc);
    acc = _mm256_fnmadd_pd(cw, gw.value, acc);
    const __m256d bad = _mm256_or_pd(_mm256_or_pd(gb.invalid, gu.invalid),
                                     _mm256_or_pd(_mm256_or_pd(gv.invalid, gz.invalid), gw.invalid));
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(acc, vninf, bad));
  }
  if (i < count) phi_row_scalar(alpha, beta + i, count - i, r, s, out + i);
}

}  // namespace hypertree::kernels

#else

namespace hypertree::kernels {

// No AVX2 on this target; isa_available(Avx2) is false and these forward.
void log_batch_avx2(const double* x, double* out, std::size_t count) {
  log_batch_scalar(x, out, count);
}
void phi_row_avx2(double alpha, const double* beta, std::size_t count, double r, double s,
                  double* out) {
  phi_row_scalar(alpha, beta, count, r, s, out);
}

}  // namespace hypertree::kernels

#endif
