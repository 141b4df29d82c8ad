#include "ksc/simd.hpp"

#if defined(KSC_HAVE_AVX2_TU)

#include <immintrin.h>

namespace ksc::simd::detail {
namespace {

void squared_distance_accumulate(const double* column, std::size_t n, double y,
                                 double* acc) {
  const __m256d vy = _mm256_set1_pd(y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(column + i), vy);
    const __m256d a = _mm256_loadu_pd(acc + i);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(a, _mm256_mul_pd(diff, diff)));
  }
  for (; i < n; ++i) {
    const double diff = column[i] - y;
    acc[i] = acc[i] + diff * diff;
  }
}

void chi_square_accumulate(const double* column, std::size_t n, double y,
                           double* acc) {
  const __m256d vy = _mm256_set1_pd(y);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d c = _mm256_loadu_pd(column + i);
    const __m256d sum = _mm256_add_pd(c, vy);
    const __m256d diff = _mm256_sub_pd(c, vy);
    const __m256d sq = _mm256_mul_pd(diff, diff);
    const __m256d nonzero = _mm256_cmp_pd(sum, zero, _CMP_NEQ_UQ);
    // 0/0 lanes produce NaN here and are masked out below.
    const __m256d term = _mm256_div_pd(_mm256_mul_pd(half, sq), sum);
    const __m256d masked = _mm256_blendv_pd(zero, term, nonzero);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), masked));
  }
  for (; i < n; ++i) {
    const double sum = column[i] + y;
    const double diff = column[i] - y;
    const double sq = diff * diff;
    const double term = sum != 0.0 ? (0.5 * sq) / sum : 0.0;
    acc[i] = acc[i] + term;
  }
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace

const KernelTable avx2_table{&squared_distance_accumulate,
                             &chi_square_accumulate, &axpy};

}  // namespace ksc::simd::detail

#endif
