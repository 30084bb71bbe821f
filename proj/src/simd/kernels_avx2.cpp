// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "sqpart/simd/kernels.hpp"

namespace sqpart::simd::avx2 {

namespace {

// exp(x) for x in [-708, 0]: x = k ln2 + r with |r| <= ln2 / 2, exp(r) by a degree-13
// Taylor polynomial (truncation < 5e-18), then scaling by 2^k through the exponent bits.
inline __m256d exp_nonpositive(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d shifter = _mm256_set1_pd(6755399441055744.0);  // 2^52 + 2^51

  x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));
  const __m256d kd_shifted = _mm256_fmadd_pd(x, log2e, shifter);
  const __m256i k_bits = _mm256_castpd_si256(kd_shifted);
  const __m256d kd = _mm256_sub_pd(kd_shifted, shifter);
  __m256d r = _mm256_fnmadd_pd(kd, ln2_hi, x);
  r = _mm256_fnmadd_pd(kd, ln2_lo, r);

  static constexpr double kInvFactorial[] = {
      1.0,
      1.0,
      1.0 / 2.0,
      1.0 / 6.0,
      1.0 / 24.0,
      1.0 / 120.0,
      1.0 / 720.0,
      1.0 / 5040.0,
      1.0 / 40320.0,
      1.0 / 362880.0,
      1.0 / 3628800.0,
      1.0 / 39916800.0,
      1.0 / 479001600.0,
      1.0 / 6227020800.0,
  };
  __m256d p = _mm256_set1_pd(kInvFactorial[13]);
  for (int i = 12; i >= 0; --i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFactorial[i]));

  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256i scale_bits = _mm256_slli_epi64(_mm256_add_epi64(k_bits, bias), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(scale_bits));
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

}  // namespace

double exp_weighted_sum(std::span<const double> weight, std::size_t t_end, double u, int power) {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  __m256d t = _mm256_setr_pd(1.0, 2.0, 3.0, 4.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d neg_u = _mm256_set1_pd(-u);

  std::size_t i = 1;
  for (; i + 3 <= t_end; i += 4) {
    __m256d term = _mm256_loadu_pd(weight.data() + i);
    for (int p = 0; p < power; ++p) term = _mm256_mul_pd(term, t);
    term = _mm256_mul_pd(term, exp_nonpositive(_mm256_mul_pd(t, neg_u)));

    const __m256d next = _mm256_add_pd(sum, term);
    const __m256d big_sum = _mm256_cmp_pd(abs_pd(sum), abs_pd(term), _CMP_GE_OQ);
    const __m256d if_sum = _mm256_add_pd(_mm256_sub_pd(sum, next), term);
    const __m256d if_term = _mm256_add_pd(_mm256_sub_pd(term, next), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(if_term, if_sum, big_sum));
    sum = next;
    t = _mm256_add_pd(t, four);
  }

  alignas(32) double lanes[4];
  alignas(32) double lane_comp[4];
  _mm256_store_pd(lanes, sum);
  _mm256_store_pd(lane_comp, comp);

  double s = 0.0;
  double c = 0.0;
  auto accumulate = [&s, &c](double term) {
    const double next = s + term;
    c += std::fabs(s) >= std::fabs(term) ? (s - next) + term : (term - next) + s;
    s = next;
  };
  for (int lane = 0; lane < 4; ++lane) {
    accumulate(lanes[lane]);
    accumulate(lane_comp[lane]);
  }
  for (; i <= t_end; ++i) {
    const double td = static_cast<double>(i);
    double term = weight[i];
    for (int p = 0; p < power; ++p) term *= td;
    accumulate(term * std::exp(-td * u));
  }
  return s + c;
}

bool add_lagged(LimbGrid grid, std::size_t lag, std::size_t n_max, std::span<const std::uint32_t> width) {
  if (lag < 4) return scalar::add_lagged(grid, lag, n_max, width);

  const __m256i sign = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
  std::size_t m = lag;
  for (; m + 3 <= n_max; m += 4) {
    const std::uint32_t w = width[m + 3];
    __m256i carry = _mm256_setzero_si256();  // all-ones lanes carry 1
    for (std::uint32_t k = 0; k < w; ++k) {
      auto* dst = reinterpret_cast<__m256i*>(grid.limbs + k * grid.stride + m);
      const auto* src = reinterpret_cast<const __m256i*>(grid.limbs + k * grid.stride + (m - lag));
      const __m256i a = _mm256_loadu_si256(dst);
      const __m256i b = _mm256_loadu_si256(src);
      const __m256i s1 = _mm256_add_epi64(a, b);
      const __m256i c1 = _mm256_cmpgt_epi64(_mm256_xor_si256(a, sign), _mm256_xor_si256(s1, sign));
      const __m256i s = _mm256_sub_epi64(s1, carry);
      const __m256i c2 = _mm256_cmpgt_epi64(_mm256_xor_si256(s1, sign), _mm256_xor_si256(s, sign));
      carry = _mm256_or_si256(c1, c2);
      _mm256_storeu_si256(dst, s);
    }
    if (!_mm256_testz_si256(carry, carry)) return false;
  }
  if (m > n_max) return true;
  // Remaining entries: each source lies strictly below m because lag >= 4.
  for (; m <= n_max; ++m) {
    unsigned char c = 0;
    for (std::uint32_t k = 0; k < width[m]; ++k) {
      std::uint64_t& dst = grid.limbs[k * grid.stride + m];
      const std::uint64_t src = grid.limbs[k * grid.stride + (m - lag)];
      std::uint64_t s = 0;
      const bool c1 = __builtin_add_overflow(dst, src, &s);
      const bool c2 = __builtin_add_overflow(s, std::uint64_t{c}, &s);
      dst = s;
      c = static_cast<unsigned char>(c1 || c2);
    }
    if (c != 0) return false;
  }
  return true;
}

}  // namespace sqpart::simd::avx2
