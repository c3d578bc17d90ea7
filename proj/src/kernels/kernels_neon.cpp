#include <cstddef>

#include "ordo/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace ordo::kernels::neon {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d < 0.0 ? -d : d;
  }
  return total;
}

OverlapCounts binary_overlap(const double* a, const double* b, std::size_t n) {
  OverlapCounts counts;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t za = vceqzq_f64(vld1q_f64(a + i));
    const uint64x2_t zb = vceqzq_f64(vld1q_f64(b + i));
    const uint64x2_t na = veorq_u64(za, vdupq_n_u64(~0ULL));
    const uint64x2_t nb = veorq_u64(zb, vdupq_n_u64(~0ULL));
    const uint64x2_t both = vandq_u64(na, nb);
    const uint64x2_t either = vorrq_u64(na, nb);
    counts.both += vgetq_lane_u64(both, 0) >> 63;
    counts.both += vgetq_lane_u64(both, 1) >> 63;
    counts.either += vgetq_lane_u64(either, 0) >> 63;
    counts.either += vgetq_lane_u64(either, 1) >> 63;
  }
  for (; i < n; ++i) {
    const bool na = a[i] != 0.0;
    const bool nb = b[i] != 0.0;
    counts.both += na && nb;
    counts.either += na || nb;
  }
  return counts;
}

}  // namespace ordo::kernels::neon

#endif
