#include "ordo/kernels.hpp"

#include <cmath>
#include <string>

#include "ordo/error.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <cpuid.h>
#endif

namespace ordo::kernels {

#if defined(ORDO_HAVE_AVX2_TU)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum_abs_diff(const double* a, const double* b, std::size_t n);
OverlapCounts binary_overlap(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#endif

#if defined(ORDO_HAVE_NEON_TU)
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
double sum_abs_diff(const double* a, const double* b, std::size_t n);
OverlapCounts binary_overlap(const double* a, const double* b, std::size_t n);
}  // namespace neon
#endif

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

OverlapCounts binary_overlap(const double* a, const double* b, std::size_t n) {
  OverlapCounts counts;
  for (std::size_t i = 0; i < n; ++i) {
    const bool na = a[i] != 0.0;
    const bool nb = b[i] != 0.0;
    counts.both += na && nb;
    counts.either += na || nb;
  }
  return counts;
}

}  // namespace scalar

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
  if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
  const bool avx2 = (ebx & (1u << 5)) != 0;
  if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
  const bool fma = (ecx & (1u << 12)) != 0;
  return avx2 && fma;
#else
  return false;
#endif
}

Backend g_active = Backend::scalar;
bool g_initialized = false;

void ensure_initialized() {
  if (!g_initialized) {
    g_active = best_backend();
    g_initialized = true;
  }
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(ORDO_HAVE_AVX2_TU)
      return cpu_has_avx2();
#else
      return false;
#endif
    case Backend::neon:
#if defined(ORDO_HAVE_NEON_TU)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend best_backend() {
  if (backend_supported(Backend::avx2)) return Backend::avx2;
  if (backend_supported(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

Backend active_backend() {
  ensure_initialized();
  return g_active;
}

void force_backend(Backend b) {
  if (!backend_supported(b)) {
    throw Error("kernel backend not supported on this machine: " +
                std::string(backend_name(b)));
  }
  g_active = b;
  g_initialized = true;
}

void reset_backend() {
  g_active = best_backend();
  g_initialized = true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  switch (active_backend()) {
#if defined(ORDO_HAVE_AVX2_TU)
    case Backend::avx2: return avx2::dot(a.data(), b.data(), n);
#endif
#if defined(ORDO_HAVE_NEON_TU)
    case Backend::neon: return neon::dot(a.data(), b.data(), n);
#endif
    default: return scalar::dot(a.data(), b.data(), n);
  }
}

double sum_abs_diff(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  switch (active_backend()) {
#if defined(ORDO_HAVE_AVX2_TU)
    case Backend::avx2: return avx2::sum_abs_diff(a.data(), b.data(), n);
#endif
#if defined(ORDO_HAVE_NEON_TU)
    case Backend::neon: return neon::sum_abs_diff(a.data(), b.data(), n);
#endif
    default: return scalar::sum_abs_diff(a.data(), b.data(), n);
  }
}

OverlapCounts binary_overlap(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  switch (active_backend()) {
#if defined(ORDO_HAVE_AVX2_TU)
    case Backend::avx2: return avx2::binary_overlap(a.data(), b.data(), n);
#endif
#if defined(ORDO_HAVE_NEON_TU)
    case Backend::neon: return neon::binary_overlap(a.data(), b.data(), n);
#endif
    default: return scalar::binary_overlap(a.data(), b.data(), n);
  }
}

}  // namespace ordo::kernels
