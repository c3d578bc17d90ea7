#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ordo::stats {

// Regularized incomplete beta function I_x(a, b), continued-fraction form.
double incomplete_beta(double a, double b, double x);
// P(T <= t) for Student's t with df degrees of freedom.
double student_t_cdf(double t, double df);
// P(F <= f) for the F distribution with (d1, d2) degrees of freedom.
double f_cdf(double f, double d1, double d2);

enum class Direction { lower_better, higher_better };

Direction direction_from_string(std::string_view name);
std::string_view to_string(Direction direction);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p_one_sided = 1.0;
  double p_two_sided = 1.0;
  bool degenerate = false;  // zero-variance samples
};

// One-sample t of the baseline samples against a fixed observed value;
// one-sided p in the direction where the observation beats the baseline.
TTestResult t_test_vs_baseline(double observed, std::span<const double> samples,
                               Direction direction);

struct AnovaResult {
  double f_stat = 0.0;
  double df_between = 0.0;
  double df_within = 0.0;
  double p_value = 1.0;
  bool degenerate = false;
};

AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups);

struct PairwiseEntry {
  std::string group_a;
  std::string group_b;
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  bool significant = false;  // against the adjusted alpha
  bool degenerate = false;
};

struct PairwiseResult {
  double alpha = 0.05;
  double alpha_adjusted = 0.05;
  std::vector<PairwiseEntry> pairs;  // k(k-1)/2, lexicographic by ids
  // group id -> mean p over its pairs, sorted ascending (ties by id)
  std::vector<std::pair<std::string, double>> ranked_mean_p;
};

// Welch two-sample t per pair with Bonferroni-adjusted alpha.
PairwiseResult pairwise_bonferroni(const std::map<std::string, std::vector<double>>& groups,
                                   double alpha = 0.05);

}  // namespace ordo::stats
