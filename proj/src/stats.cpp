#include "ordo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "ordo/error.hpp"

namespace ordo::stats {

namespace {

constexpr int kMaxIterations = 1000;
constexpr double kEpsilon = 1e-12;
constexpr double kTiny = 1e-30;

// Lentz continued fraction for the incomplete beta function.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEpsilon) break;
  }
  return h;
}

double sample_mean(std::span<const double> values) {
  double mean = 0.0;
  for (double x : values) mean += x;
  return mean / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values, double mean) {
  double var = 0.0;
  for (double x : values) var += (x - mean) * (x - mean);
  return var / static_cast<double>(values.size() - 1);
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw Error("incomplete_beta: parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (df <= 0.0) throw Error("student_t_cdf: df must be positive");
  if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double f_cdf(double f, double d1, double d2) {
  if (d1 <= 0.0 || d2 <= 0.0) throw Error("f_cdf: df must be positive");
  if (f <= 0.0) return 0.0;
  if (std::isinf(f)) return 1.0;
  const double x = d1 * f / (d1 * f + d2);
  return incomplete_beta(0.5 * d1, 0.5 * d2, x);
}

Direction direction_from_string(std::string_view name) {
  if (name == "lower_better") return Direction::lower_better;
  if (name == "higher_better") return Direction::higher_better;
  throw Error("unknown direction: " + std::string(name));
}

std::string_view to_string(Direction direction) {
  return direction == Direction::lower_better ? "lower_better" : "higher_better";
}

TTestResult t_test_vs_baseline(double observed, std::span<const double> samples,
                               Direction direction) {
  if (samples.size() < 2) throw Error("t test needs at least 2 samples");
  const double m = static_cast<double>(samples.size());
  const double mean = sample_mean(samples);
  const double sd = std::sqrt(sample_variance(samples, mean));

  TTestResult result;
  result.df = m - 1.0;
  if (sd == 0.0) {
    result.degenerate = true;
    const bool strictly_better = direction == Direction::lower_better
                                     ? observed < mean
                                     : observed > mean;
    result.t = 0.0;
    result.p_one_sided = strictly_better ? 0.0 : 1.0;
    result.p_two_sided = observed == mean ? 1.0 : 0.0;
    std::cerr << "note: zero-variance baseline in t test (degenerate p)\n";
    return result;
  }
  result.t = (mean - observed) / (sd / std::sqrt(m));
  const double cdf = student_t_cdf(result.t, result.df);
  result.p_one_sided = direction == Direction::lower_better ? 1.0 - cdf : cdf;
  result.p_two_sided = 2.0 * (1.0 - student_t_cdf(std::fabs(result.t), result.df));
  return result;
}

AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw Error("anova needs at least 2 groups");
  for (const auto& group : groups) {
    if (group.size() < 2) throw Error("anova needs at least 2 values per group");
  }
  double grand_total = 0.0;
  std::size_t total_count = 0;
  for (const auto& group : groups) {
    for (double x : group) grand_total += x;
    total_count += group.size();
  }
  const double grand_mean = grand_total / static_cast<double>(total_count);

  double ss_between = 0.0;
  double ss_within = 0.0;
  for (const auto& group : groups) {
    const double mean = sample_mean(group);
    ss_between += static_cast<double>(group.size()) * (mean - grand_mean) * (mean - grand_mean);
    for (double x : group) ss_within += (x - mean) * (x - mean);
  }

  AnovaResult result;
  result.df_between = static_cast<double>(groups.size() - 1);
  result.df_within = static_cast<double>(total_count - groups.size());
  if (ss_within == 0.0) {
    result.degenerate = true;
    if (ss_between == 0.0) {
      result.f_stat = 0.0;
      result.p_value = 1.0;
    } else {
      result.f_stat = std::numeric_limits<double>::infinity();
      result.p_value = 0.0;
    }
    std::cerr << "note: zero within-group variance in anova (degenerate p)\n";
    return result;
  }
  result.f_stat = (ss_between / result.df_between) / (ss_within / result.df_within);
  result.p_value = 1.0 - f_cdf(result.f_stat, result.df_between, result.df_within);
  return result;
}

namespace {

PairwiseEntry welch_pair(const std::string& id_a, std::span<const double> a,
                         const std::string& id_b, std::span<const double> b) {
  PairwiseEntry entry;
  entry.group_a = id_a;
  entry.group_b = id_b;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = sample_mean(a);
  const double mb = sample_mean(b);
  const double va = sample_variance(a, ma);
  const double vb = sample_variance(b, mb);
  if (va == 0.0 && vb == 0.0) {
    entry.degenerate = true;
    entry.t = 0.0;
    entry.df = na + nb - 2.0;
    entry.p_value = ma == mb ? 1.0 : 0.0;
    std::cerr << "note: zero-variance pair in pairwise test (degenerate p)\n";
    return entry;
  }
  const double se_a = va / na;
  const double se_b = vb / nb;
  entry.t = (ma - mb) / std::sqrt(se_a + se_b);
  entry.df = (se_a + se_b) * (se_a + se_b) /
             (se_a * se_a / (na - 1.0) + se_b * se_b / (nb - 1.0));
  entry.p_value = 2.0 * (1.0 - student_t_cdf(std::fabs(entry.t), entry.df));
  return entry;
}

}  // namespace

PairwiseResult pairwise_bonferroni(const std::map<std::string, std::vector<double>>& groups,
                                   double alpha) {
  if (groups.size() < 2) throw Error("pairwise comparison needs at least 2 groups");
  for (const auto& [id, values] : groups) {
    if (values.size() < 2) {
      throw Error("pairwise comparison needs at least 2 values per group: " + id);
    }
  }
  PairwiseResult result;
  result.alpha = alpha;
  const std::size_t k = groups.size();
  const std::size_t n_pairs = k * (k - 1) / 2;
  result.alpha_adjusted = alpha / static_cast<double>(n_pairs);

  std::map<std::string, std::vector<double>> per_group_p;
  for (auto it_a = groups.begin(); it_a != groups.end(); ++it_a) {
    for (auto it_b = std::next(it_a); it_b != groups.end(); ++it_b) {
      PairwiseEntry entry = welch_pair(it_a->first, it_a->second, it_b->first, it_b->second);
      entry.significant = entry.p_value <= result.alpha_adjusted;
      per_group_p[entry.group_a].push_back(entry.p_value);
      per_group_p[entry.group_b].push_back(entry.p_value);
      result.pairs.push_back(std::move(entry));
    }
  }
  for (const auto& [id, pvalues] : per_group_p) {
    result.ranked_mean_p.emplace_back(id, sample_mean(pvalues));
  }
  std::sort(result.ranked_mean_p.begin(), result.ranked_mean_p.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second < b.second;
              return a.first < b.first;
            });
  return result;
}

}  // namespace ordo::stats
