#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace ordo::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);
bool backend_supported(Backend b);
Backend best_backend();
Backend active_backend();
// Force a specific backend (tests, benchmarking). Throws ordo::Error if the
// backend is not supported on this machine.
void force_backend(Backend b);
void reset_backend();

struct OverlapCounts {
  std::uint64_t both = 0;
  std::uint64_t either = 0;
};

// Inner product Σ a_i·b_i.
double dot(std::span<const double> a, std::span<const double> b);
// L1 distance Σ |a_i − b_i|.
double sum_abs_diff(std::span<const double> a, std::span<const double> b);
// Presence overlap: positions where both entries are nonzero vs where at
// least one is.
OverlapCounts binary_overlap(std::span<const double> a, std::span<const double> b);

// Fixed scalar reference path, used directly by equivalence tests.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum_abs_diff(const double* a, const double* b, std::size_t n);
OverlapCounts binary_overlap(const double* a, const double* b, std::size_t n);
}  // namespace scalar

}  // namespace ordo::kernels
