#include <cstddef>

#include "ordo/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace ordo::kernels::avx2 {

namespace {

inline double reduce_add(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d sum2 = _mm_add_pd(lo, hi);
  const __m128d swap = _mm_unpackhi_pd(sum2, sum2);
  return _mm_cvtsd_f64(_mm_add_sd(sum2, swap));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double total = reduce_add(acc);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  double total = reduce_add(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d < 0.0 ? -d : d;
  }
  return total;
}

OverlapCounts binary_overlap(const double* a, const double* b, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  OverlapCounts counts;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    const __m256d nza = _mm256_cmp_pd(va, zero, _CMP_NEQ_OQ);
    const __m256d nzb = _mm256_cmp_pd(vb, zero, _CMP_NEQ_OQ);
    const int both = _mm256_movemask_pd(_mm256_and_pd(nza, nzb));
    const int either = _mm256_movemask_pd(_mm256_or_pd(nza, nzb));
    counts.both += static_cast<std::uint64_t>(__builtin_popcount(both));
    counts.either += static_cast<std::uint64_t>(__builtin_popcount(either));
  }
  for (; i < n; ++i) {
    const bool na = a[i] != 0.0;
    const bool nb = b[i] != 0.0;
    counts.both += na && nb;
    counts.either += na || nb;
  }
  return counts;
}

}  // namespace ordo::kernels::avx2

#endif
