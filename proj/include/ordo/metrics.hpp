#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ordo {

enum class OrderMetric { nhd, nmhd, nrmse, nmwoe, mcoe };

inline constexpr std::array<OrderMetric, 5> kAllOrderMetrics = {
    OrderMetric::nhd, OrderMetric::nmhd, OrderMetric::nrmse, OrderMetric::nmwoe,
    OrderMetric::mcoe};

std::string_view metric_name(OrderMetric metric);
OrderMetric metric_from_string(std::string_view name);
// mcoe is a match score (higher = better); the other four are errors.
bool metric_higher_is_better(OrderMetric metric);

struct MetricValues {
  double nhd = 0.0;
  double nmhd = 0.0;
  double nrmse = 0.0;
  double nmwoe = 0.0;
  double mcoe = 0.0;
  struct Raw {
    double hd = 0.0;
    double mhd = 0.0;
    double rmse = 0.0;  // root of the SUM of squared displacements
    double mwoe = 0.0;  // mean weighted displacement
  } raw;

  double value(OrderMetric metric) const;
};

// All metrics compare a predicted order B against the gold order A; both
// must be permutations of the same set.
double nhd(std::span<const int> gold, std::span<const int> predicted);
double nmhd(std::span<const int> gold, std::span<const int> predicted);
double nrmse(std::span<const int> gold, std::span<const int> predicted);
double nmwoe(std::span<const int> gold, std::span<const int> predicted);
// Fraction of adjacent predicted pairs consecutive in the gold direction;
// requires gold to be ascending or descending.
double mcoe(std::span<const int> gold, std::span<const int> predicted);

MetricValues evaluate_order(std::span<const int> gold, std::span<const int> predicted);

// Maximum of Σ w_i·|a_i − b_i| over permutations b of gold values,
// w_i = n − i + 1 (front positions weigh most).
double mwoe_assignment_max(std::span<const int> gold);

struct BaselineStats {
  int n = 0;
  int count = 0;
  std::uint64_t master_seed = 0;
  std::array<std::vector<double>, 5> samples;  // indexed by OrderMetric order
  std::array<double, 5> mean{};
  std::array<double, 5> stddev{};  // sample standard deviation

  std::span<const double> metric_samples(OrderMetric metric) const {
    return samples[static_cast<std::size_t>(metric)];
  }
  double metric_mean(OrderMetric metric) const {
    return mean[static_cast<std::size_t>(metric)];
  }
  double metric_stddev(OrderMetric metric) const {
    return stddev[static_cast<std::size_t>(metric)];
  }
};

// Metric statistics over `count` uniform random permutations of 1..n
// against the ascending gold order.
BaselineStats random_baseline(int n, int count, std::uint64_t master_seed,
                              int workers = 1);

}  // namespace ordo
