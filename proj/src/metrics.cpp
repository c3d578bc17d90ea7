#include "ordo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "ordo/assignment.hpp"
#include "ordo/error.hpp"
#include "ordo/parallel.hpp"
#include "ordo/rng.hpp"

namespace ordo {

std::string_view metric_name(OrderMetric metric) {
  switch (metric) {
    case OrderMetric::nhd: return "nhd";
    case OrderMetric::nmhd: return "nmhd";
    case OrderMetric::nrmse: return "nrmse";
    case OrderMetric::nmwoe: return "nmwoe";
    case OrderMetric::mcoe: return "mcoe";
  }
  return "nhd";
}

OrderMetric metric_from_string(std::string_view name) {
  for (OrderMetric metric : kAllOrderMetrics) {
    if (metric_name(metric) == name) return metric;
  }
  throw Error("unknown metric: " + std::string(name));
}

bool metric_higher_is_better(OrderMetric metric) {
  return metric == OrderMetric::mcoe;
}

double MetricValues::value(OrderMetric metric) const {
  switch (metric) {
    case OrderMetric::nhd: return nhd;
    case OrderMetric::nmhd: return nmhd;
    case OrderMetric::nrmse: return nrmse;
    case OrderMetric::nmwoe: return nmwoe;
    case OrderMetric::mcoe: return mcoe;
  }
  return nhd;
}

namespace {

void validate_pair(std::span<const int> gold, std::span<const int> predicted) {
  if (gold.size() != predicted.size()) {
    throw Error("sequence length mismatch");
  }
  if (gold.size() < 2) {
    throw Error("sequences too short: need at least 2 positions");
  }
  std::vector<int> a(gold.begin(), gold.end());
  std::vector<int> b(predicted.begin(), predicted.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
    throw Error("sequences are not permutations: repeated value");
  }
  if (a != b) {
    throw Error("sequences are not permutations of the same set");
  }
}

struct Normalizers {
  double mhd_max = 1.0;
  double rmse_max = 1.0;   // root-sum form
  double mwoe_max = 1.0;   // mean form
};

// weight of 1-based position i in a length-n sequence
inline double position_weight(std::size_t i, std::size_t n) {
  return static_cast<double>(n - (i + 1) + 1);
}

Normalizers compute_normalizers(std::span<const int> gold) {
  const std::size_t n = gold.size();
  Normalizers norm;
  norm.mhd_max = static_cast<double>((n * n) / 2);

  std::vector<int> sorted_values(gold.begin(), gold.end());
  std::sort(sorted_values.begin(), sorted_values.end());
  std::unordered_map<int, std::size_t> rank;
  rank.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rank[sorted_values[i]] = i;

  // value-mirror pairing maximizes the quadratic displacement sum
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mirrored = sorted_values[n - 1 - rank[gold[i]]];
    const double d = static_cast<double>(gold[i]) - mirrored;
    sum_sq += d * d;
  }
  norm.rmse_max = std::sqrt(sum_sq);

  std::vector<double> gain(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      gain[i * n + j] = position_weight(i, n) *
                        std::abs(static_cast<double>(gold[i]) - sorted_values[j]);
    }
  }
  norm.mwoe_max = max_assignment(gain, n) / static_cast<double>(n);
  return norm;
}

MetricValues evaluate_with(std::span<const int> gold, std::span<const int> predicted,
                           const Normalizers& norm) {
  const std::size_t n = gold.size();
  MetricValues values;

  double hd = 0.0;
  double mhd = 0.0;
  double sum_sq = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(static_cast<double>(gold[i]) - predicted[i]);
    if (d != 0.0) hd += 1.0;
    mhd += d;
    sum_sq += d * d;
    weighted += position_weight(i, n) * d;
  }
  values.raw.hd = hd;
  values.raw.mhd = mhd;
  values.raw.rmse = std::sqrt(sum_sq);
  values.raw.mwoe = weighted / static_cast<double>(n);

  values.nhd = hd / static_cast<double>(n);
  values.nmhd = mhd / norm.mhd_max;
  values.nrmse = values.raw.rmse / norm.rmse_max;
  values.nmwoe = values.raw.mwoe / norm.mwoe_max;

  // adjacency match against the gold successor relation
  std::unordered_map<int, int> successor;
  successor.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i) successor[gold[i]] = gold[i + 1];
  double matches = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto it = successor.find(predicted[i]);
    if (it != successor.end() && it->second == predicted[i + 1]) matches += 1.0;
  }
  values.mcoe = matches / static_cast<double>(n - 1);
  return values;
}

}  // namespace

double nhd(std::span<const int> gold, std::span<const int> predicted) {
  validate_pair(gold, predicted);
  return evaluate_with(gold, predicted, compute_normalizers(gold)).nhd;
}

double nmhd(std::span<const int> gold, std::span<const int> predicted) {
  validate_pair(gold, predicted);
  return evaluate_with(gold, predicted, compute_normalizers(gold)).nmhd;
}

double nrmse(std::span<const int> gold, std::span<const int> predicted) {
  validate_pair(gold, predicted);
  return evaluate_with(gold, predicted, compute_normalizers(gold)).nrmse;
}

double nmwoe(std::span<const int> gold, std::span<const int> predicted) {
  validate_pair(gold, predicted);
  return evaluate_with(gold, predicted, compute_normalizers(gold)).nmwoe;
}

double mcoe(std::span<const int> gold, std::span<const int> predicted) {
  validate_pair(gold, predicted);
  return evaluate_with(gold, predicted, compute_normalizers(gold)).mcoe;
}

MetricValues evaluate_order(std::span<const int> gold, std::span<const int> predicted) {
  validate_pair(gold, predicted);
  return evaluate_with(gold, predicted, compute_normalizers(gold));
}

double mwoe_assignment_max(std::span<const int> gold) {
  if (gold.size() < 2) throw Error("sequences too short: need at least 2 positions");
  return compute_normalizers(gold).mwoe_max * static_cast<double>(gold.size());
}

BaselineStats random_baseline(int n, int count, std::uint64_t master_seed,
                              int workers) {
  if (n < 2) throw Error("baseline needs n >= 2");
  if (count < 2) throw Error("baseline needs count >= 2");

  BaselineStats stats;
  stats.n = n;
  stats.count = count;
  stats.master_seed = master_seed;
  for (auto& samples : stats.samples) samples.assign(count, 0.0);

  std::vector<int> gold(n);
  std::iota(gold.begin(), gold.end(), 1);
  const Normalizers norm = compute_normalizers(gold);

  parallel_for(static_cast<std::size_t>(count), workers, [&](std::size_t k) {
    Rng rng(derive_seed(master_seed, k));
    std::vector<int> perm = gold;
    rng.shuffle(perm);
    const MetricValues values = evaluate_with(gold, perm, norm);
    for (OrderMetric metric : kAllOrderMetrics) {
      stats.samples[static_cast<std::size_t>(metric)][k] = values.value(metric);
    }
  });

  for (std::size_t m = 0; m < stats.samples.size(); ++m) {
    const auto& samples = stats.samples[m];
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(count);
    double var = 0.0;
    for (double x : samples) var += (x - mean) * (x - mean);
    var /= static_cast<double>(count - 1);
    stats.mean[m] = mean;
    stats.stddev[m] = std::sqrt(var);
  }
  return stats;
}

}  // namespace ordo
